use astro_float::BigFloat;
use exact_linalg::{rat_from_i64, rat_to_string, Rat};
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::ctx::{decimal, Ctx};
use crate::{DehnError, Result};

/// Largest denominator probed when deciding whether a computed angle is an
/// exact rational multiple of π.
const MAX_TAG_DENOMINATOR: i64 = 24;

/// An angle in [0, π]; when `pi_rational` is `Some(q)` the angle is exactly
/// qπ and `value` is qπ evaluated at the working precision.
#[derive(Debug, Clone)]
pub struct Angle {
    value: BigFloat,
    pi_rational: Option<Rat>,
}

impl Angle {
    /// The exact angle qπ, 0 ≤ q ≤ 1.
    pub fn from_pi_rational(q: Rat, ctx: &mut Ctx) -> Result<Angle> {
        if q < Rat::zero() || q > Rat::one() {
            return Err(DehnError::Geometry(format!(
                "{}π is outside [0, π]",
                rat_to_string(&q)
            )));
        }
        let pi = ctx.pi();
        let coeff = ctx.from_rat(&q);
        let value = ctx.mul(&coeff, &pi);
        Ok(Angle {
            value,
            pi_rational: Some(q),
        })
    }

    /// A numeric angle in radians. Values within 2^{−(bits−16)} of qπ for a
    /// small-denominator rational q are snapped to the exact tag, so the
    /// tag invariant |value − qπ| < 2^{−(bits−8)} holds by construction.
    pub fn from_radians(value: BigFloat, ctx: &mut Ctx) -> Result<Angle> {
        let pi = ctx.pi();
        let slack = ctx.pow2(16 - ctx.bits() as i32);
        if value.is_negative() && !ctx.below_pow2(&value, 16 - ctx.bits() as i32) {
            return Err(DehnError::Geometry(format!(
                "angle {} is negative",
                decimal(&value)
            )));
        }
        if ctx.sub(&value, &pi).cmp(&slack).map(|c| c > 0).unwrap_or(true) {
            return Err(DehnError::Geometry(format!(
                "angle {} exceeds π",
                decimal(&value)
            )));
        }
        if let Some(q) = detect_pi_rational(&value, ctx) {
            return Angle::from_pi_rational(q, ctx);
        }
        Ok(Angle {
            value,
            pi_rational: None,
        })
    }

    /// arccos of a numeric value in [−1, 1].
    pub fn arccos(x: &BigFloat, ctx: &mut Ctx) -> Result<Angle> {
        let v = ctx.acos(x)?;
        Angle::from_radians(v, ctx)
    }

    pub fn value(&self) -> &BigFloat {
        &self.value
    }

    pub fn pi_rational(&self) -> Option<&Rat> {
        self.pi_rational.as_ref()
    }

    pub fn is_pi_rational(&self) -> bool {
        self.pi_rational.is_some()
    }

    pub fn cos(&self, ctx: &mut Ctx) -> BigFloat {
        ctx.cos(&self.value)
    }
}

fn detect_pi_rational(value: &BigFloat, ctx: &mut Ctx) -> Option<Rat> {
    let pi = ctx.pi();
    let threshold = 16 - ctx.bits() as i32;
    for den in 1..=MAX_TAG_DENOMINATOR {
        for num in 0..=den {
            if num > 1 && num_integer::gcd(num, den) != 1 {
                continue;
            }
            let scaled = ctx.mul(value, &ctx.int(den));
            let target = ctx.mul(&pi, &ctx.int(num));
            if ctx.below_pow2(&ctx.sub(&scaled, &target), threshold + 6) {
                return Some(rat_from_i64(num, den));
            }
        }
    }
    None
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Angle", 2)?;
        st.serialize_field("value", &decimal(&self.value))?;
        st.serialize_field(
            "pi_rational",
            &self.pi_rational.as_ref().map(rat_to_string),
        )?;
        st.end()
    }
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.pi_rational {
            Some(q) if q.is_zero() => write!(f, "0"),
            Some(q) if q.is_one() => write!(f, "π"),
            Some(q) => write!(f, "{}π", rat_to_string(q)),
            None => write!(f, "{}", decimal(&self.value)),
        }
    }
}

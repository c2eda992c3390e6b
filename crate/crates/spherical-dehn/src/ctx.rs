use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use exact_linalg::Rat;
use num_bigint::{BigInt, BigUint, Sign as IntSign};

use crate::{DehnError, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Arbitrary-precision numeric context: a fixed working precision in bits
/// plus a cache of computed constants. One per thread; all operations round
/// to the stated precision.
pub struct Ctx {
    bits: usize,
    cc: Consts,
}

impl Ctx {
    pub fn new(bits: usize) -> Result<Ctx> {
        if bits < 64 {
            return Err(DehnError::Precision(format!(
                "precision {} bits is too small (minimum 64)",
                bits
            )));
        }
        let cc = Consts::new()
            .map_err(|e| DehnError::Precision(format!("constants cache: {:?}", e)))?;
        Ok(Ctx { bits, cc })
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.bits, RM)
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.bits)
    }

    pub fn from_rat(&mut self, r: &Rat) -> BigFloat {
        let num = self.parse_int(&r.numer().to_string());
        let den = self.parse_int(&r.denom().to_string());
        num.div(&den, self.bits, RM)
    }

    fn parse_int(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, self.bits + 32, RM, &mut self.cc)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> Result<BigFloat> {
        if a.is_negative() {
            return Err(DehnError::Geometry(
                "square root of a negative quantity".into(),
            ));
        }
        Ok(a.sqrt(self.bits, RM))
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.bits, RM, &mut self.cc)
    }

    pub fn acos(&mut self, a: &BigFloat) -> Result<BigFloat> {
        let mut mag = a.clone();
        mag.set_sign(Sign::Pos);
        if mag.cmp(&self.int(1)).map(|c| c > 0).unwrap_or(true) {
            return Err(DehnError::Geometry(format!(
                "arccos argument {} outside [-1, 1]",
                decimal(a)
            )));
        }
        Ok(a.acos(self.bits, RM, &mut self.cc))
    }

    /// 2^k at working precision.
    pub fn pow2(&self, k: i32) -> BigFloat {
        let mut x = self.int(1);
        x.set_exponent(1 + k);
        x
    }

    /// |a| < 2^k. (astro-float's `abs_cmp` compares finite values with
    /// sign, so take the absolute value explicitly.)
    pub fn below_pow2(&self, a: &BigFloat, k: i32) -> bool {
        if a.is_zero() {
            return true;
        }
        let mut mag = a.clone();
        mag.set_sign(Sign::Pos);
        mag.cmp(&self.pow2(k)).map(|c| c < 0).unwrap_or(false)
    }
}

/// Decimal rendering used in reports and serialization.
pub fn decimal(x: &BigFloat) -> String {
    format!("{}", x)
}

/// round(x · 2^shift) as an exact integer, via the raw mantissa.
pub fn scaled_int(x: &BigFloat, shift: i64) -> BigInt {
    if x.is_zero() {
        return BigInt::from(0);
    }
    let (words, _n, sign, exp, _) = x.as_raw_parts().expect("finite number");
    let mut bytes = Vec::with_capacity(words.len() * 8);
    for w in words {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    let mant = BigUint::from_bytes_le(&bytes);
    let mant_bits = (words.len() * 64) as i64;
    // value = ±mant · 2^(exp − mant_bits); total shift of the integer mant:
    let total = exp as i64 - mant_bits + shift;
    let mag = if total >= 0 {
        mant << (total as u64)
    } else {
        let down = (-total) as u64;
        // round to nearest by adding half before the shift
        let half = BigUint::from(1u8) << (down - 1);
        (mant + half) >> down
    };
    let s = if sign == Sign::Neg {
        IntSign::Minus
    } else {
        IntSign::Plus
    };
    BigInt::from_biguint(s, mag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::rat_from_i64;

    #[test]
    fn pow2_and_scaled_int_agree() {
        let ctx = Ctx::new(128).unwrap();
        assert_eq!(scaled_int(&ctx.int(6), 0), BigInt::from(6));
        assert_eq!(scaled_int(&BigFloat::from_f64(1.5, 128), 2), BigInt::from(6));
        assert_eq!(scaled_int(&BigFloat::from_f64(-0.75, 128), 2), BigInt::from(-3));
        assert_eq!(scaled_int(&ctx.pow2(-10), 12), BigInt::from(4));
    }

    #[test]
    fn rational_conversion_round_trips() {
        let mut ctx = Ctx::new(192).unwrap();
        let x = ctx.from_rat(&rat_from_i64(-22, 7));
        let y = ctx.mul(&x, &ctx.int(7));
        let diff = ctx.add(&y, &ctx.int(22));
        assert!(ctx.below_pow2(&diff, -180), "residual {}", decimal(&diff));
    }

    #[test]
    fn pi_has_expected_leading_digits() {
        let mut ctx = Ctx::new(256).unwrap();
        let pi = ctx.pi();
        assert!(decimal(&pi).starts_with("3.14159265358979"));
    }
}

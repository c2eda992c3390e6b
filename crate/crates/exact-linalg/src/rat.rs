use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::LinAlgError;

/// Arbitrary-precision rational scalar. `BigRational` keeps the canonical
/// reduced form (gcd 1, positive denominator) on construction.
pub type Rat = BigRational;

pub fn rat_from_i64(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Formats as `p` or `p/q`, the wire form used across the JSON schemas.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a plain decimal like `-1.25`.
pub fn parse_rat(s: &str) -> Result<Rat, LinAlgError> {
    let s = s.trim();
    let bad = || LinAlgError::BadRational(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| bad())?;
        let den: BigInt = q.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rat::new(num, den))
    } else if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let fnum: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().map_err(|_| bad())?
        };
        if fnum.is_negative() {
            return Err(bad());
        }
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        Ok(Rat::new(int * &den + BigInt::from(sign) * fnum, den))
    } else {
        let num: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rat::from_integer(num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/6").unwrap(), rat_from_i64(1, 2));
        assert_eq!(parse_rat("-4").unwrap(), rat_from_i64(-4, 1));
        assert_eq!(parse_rat("-1.25").unwrap(), rat_from_i64(-5, 4));
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn wire_form() {
        assert_eq!(rat_to_string(&rat_from_i64(-2, 4)), "-1/2");
        assert_eq!(rat_to_string(&rat_from_i64(7, 1)), "7");
    }
}

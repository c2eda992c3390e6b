use exact_linalg::{parse_rat, Rat};
use num_traits::One;

use crate::angle::Angle;
use crate::ctx::Ctx;
use crate::{DehnError, Result};

/// Parse an angle expression: a rational number of radians ("1", "-3/7"),
/// a rational multiple of π ("pi", "pi/2", "2*pi/3", "3/4*pi"), or an
/// arccosine of a rational ("arccos(-1/3)").
pub fn parse_angle(input: &str, ctx: &mut Ctx) -> Result<Angle> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(DehnError::Parse("empty angle expression".into()));
    }
    if let Some(inner) = s
        .strip_prefix("arccos(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        let r = parse_rational(inner)?;
        let x = ctx.from_rat(&r);
        return Angle::arccos(&x, ctx);
    }
    if let Some(q) = parse_pi_multiple(&s)? {
        return Angle::from_pi_rational(q, ctx);
    }
    let r = parse_rational(&s)?;
    let v = ctx.from_rat(&r);
    Angle::from_radians(v, ctx)
}

fn parse_rational(s: &str) -> Result<Rat> {
    parse_rat(s).map_err(|_| DehnError::Parse(format!("not a rational number: {:?}", s)))
}

/// `q` such that the expression denotes qπ, or `None` if "pi" is absent.
fn parse_pi_multiple(s: &str) -> Result<Option<Rat>> {
    let Some(pos) = s.find("pi") else {
        return Ok(None);
    };
    let (before, after) = (&s[..pos], &s[pos + 2..]);
    let mut q = match before {
        "" => Rat::one(),
        "-" => -Rat::one(),
        b => {
            let b = b
                .strip_suffix('*')
                .ok_or_else(|| DehnError::Parse(format!("expected '*' before pi in {:?}", s)))?;
            parse_rational(b)?
        }
    };
    match after {
        "" => {}
        a => {
            let a = a
                .strip_prefix('/')
                .ok_or_else(|| DehnError::Parse(format!("expected '/' after pi in {:?}", s)))?;
            let d = parse_rational(a)?;
            q /= d;
        }
    }
    Ok(Some(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::rat_from_i64;

    #[test]
    fn parses_pi_forms() {
        let mut ctx = Ctx::new(192).unwrap();
        for (text, num, den) in [
            ("pi", 1, 1),
            ("pi/2", 1, 2),
            ("2*pi/3", 2, 3),
            ("3/4*pi", 3, 4),
            (" pi / 2 ", 1, 2),
            ("0", 0, 1),
        ] {
            let a = parse_angle(text, &mut ctx).unwrap();
            assert_eq!(a.pi_rational(), Some(&rat_from_i64(num, den)), "{}", text);
        }
    }

    #[test]
    fn parses_radians_and_arccos() {
        let mut ctx = Ctx::new(256).unwrap();
        let one = parse_angle("1", &mut ctx).unwrap();
        assert_eq!(one.pi_rational(), None);
        let ac = parse_angle("arccos(-1/3)", &mut ctx).unwrap();
        let third = ctx.div(&ctx.int(-1), &ctx.int(3));
        let c = ac.cos(&mut ctx);
        let diff = ctx.sub(&c, &third);
        assert!(ctx.below_pow2(&diff, -240));
    }

    #[test]
    fn rejects_garbage() {
        let mut ctx = Ctx::new(192).unwrap();
        for bad in ["", "pie", "arccos(2,3)", "1+pi", "pi*2"] {
            assert!(parse_angle(bad, &mut ctx).is_err(), "{}", bad);
        }
    }
}

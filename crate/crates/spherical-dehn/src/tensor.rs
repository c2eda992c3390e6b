use serde::Serialize;

use crate::angle::Angle;
use crate::ctx::Ctx;
use crate::relation::integer_relation;
use crate::simplex::{dihedral, edge_length, SphericalSimplex};
use crate::Result;

/// A Dehn tensor: an integer combination of `left ⊗ right` terms with both
/// factors in ℝ/πℚ.
#[derive(Debug, Clone, Serialize)]
pub struct DehnTensor {
    pub terms: Vec<(i64, Angle, Angle)>,
}

impl DehnTensor {
    pub fn new(terms: Vec<(i64, Angle, Angle)>) -> DehnTensor {
        DehnTensor { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The flip `x ⊗ y ↦ y ⊗ x`.
    pub fn swap(&self) -> DehnTensor {
        DehnTensor {
            terms: self
                .terms
                .iter()
                .map(|(c, l, r)| (*c, r.clone(), l.clone()))
                .collect(),
        }
    }
}

impl std::fmt::Display for DehnTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, l, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}({} ⊗ {})", c, l, r)?;
        }
        Ok(())
    }
}

fn numerically_equal(a: &Angle, b: &Angle, ctx: &Ctx) -> bool {
    let diff = ctx.sub(a.value(), b.value());
    ctx.below_pow2(&diff, 16 - ctx.bits() as i32)
}

/// The Dehn invariant Σ_e length(e) ⊗ dihedral(e) over the 6 edges, with
/// numerically equal terms merged into integer coefficients.
pub fn dehn_invariant(s: &SphericalSimplex, ctx: &mut Ctx) -> Result<DehnTensor> {
    let mut terms: Vec<(i64, Angle, Angle)> = Vec::new();
    for &e in s.edges() {
        let l = edge_length(s, e, ctx)?;
        let d = dihedral(s, e, ctx)?;
        if let Some(t) = terms
            .iter_mut()
            .find(|(_, tl, td)| numerically_equal(tl, &l, ctx) && numerically_equal(td, &d, ctx))
        {
            t.0 += 1;
        } else {
            terms.push((1, l, d));
        }
    }
    Ok(DehnTensor { terms })
}

/// Whether `x` is a rational multiple of π: by exact tag, or an integer
/// relation with π within the bounds.
pub fn is_pi_rational(x: &Angle, height: u64, ctx: &mut Ctx) -> Result<bool> {
    if x.is_pi_rational() {
        return Ok(true);
    }
    let pi = ctx.pi();
    Ok(integer_relation(&[x.value().clone(), pi], height, ctx)?.is_some())
}

/// Whether two angles agree in ℝ/πℚ: their difference is (numerically) zero
/// or related to π by an integer relation within the bounds.
pub fn equal_mod_pi_q(x: &Angle, y: &Angle, height: u64, ctx: &mut Ctx) -> Result<bool> {
    if numerically_equal(x, y, ctx) {
        return Ok(true);
    }
    let diff = ctx.sub(x.value(), y.value());
    let pi = ctx.pi();
    Ok(integer_relation(&[diff, pi], height, ctx)?.is_some())
}

/// Reduction in (ℝ/πℚ) ⊗ (ℝ/πℚ): drop terms with a π-rational factor,
/// merge terms whose factors agree mod πℚ, drop zero coefficients. The
/// result is canonical given the detector outcomes, hence idempotent.
pub fn reduce_tensor(t: &DehnTensor, height: u64, ctx: &mut Ctx) -> Result<DehnTensor> {
    let mut out: Vec<(i64, Angle, Angle)> = Vec::new();
    for (c, l, r) in &t.terms {
        if is_pi_rational(l, height, ctx)? || is_pi_rational(r, height, ctx)? {
            continue;
        }
        let mut merged = false;
        for slot in out.iter_mut() {
            if equal_mod_pi_q(&slot.1, l, height, ctx)? && equal_mod_pi_q(&slot.2, r, height, ctx)?
            {
                slot.0 += c;
                merged = true;
                break;
            }
        }
        if !merged {
            out.push((*c, l.clone(), r.clone()));
        }
    }
    out.retain(|(c, _, _)| *c != 0);
    Ok(DehnTensor { terms: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::regular_tetra;
    use exact_linalg::rat_from_i64;

    #[test]
    fn generic_tetra_has_single_merged_term() {
        let mut ctx = Ctx::new(256).unwrap();
        let a = Angle::from_radians(ctx.int(1), &mut ctx).unwrap();
        let t = regular_tetra(&a, &mut ctx).unwrap();
        let inv = dehn_invariant(&t, &mut ctx).unwrap();
        assert_eq!(inv.terms.len(), 1);
        assert_eq!(inv.terms[0].0, 6);
    }

    #[test]
    fn right_angled_tetra_reduces_to_zero() {
        let mut ctx = Ctx::new(256).unwrap();
        let a = Angle::from_pi_rational(rat_from_i64(1, 2), &mut ctx).unwrap();
        let t = regular_tetra(&a, &mut ctx).unwrap();
        let inv = dehn_invariant(&t, &mut ctx).unwrap();
        assert_eq!(inv.terms.len(), 1);
        assert_eq!(inv.terms[0].0, 6);
        let reduced = reduce_tensor(&inv, 1000, &mut ctx).unwrap();
        assert!(reduced.is_zero());
    }

    #[test]
    fn merge_doubles_coefficient() {
        let mut ctx = Ctx::new(256).unwrap();
        let a = Angle::from_radians(ctx.int(1), &mut ctx).unwrap();
        let d = Angle::from_radians(ctx.int(2), &mut ctx).unwrap();
        let t = DehnTensor::new(vec![(1, a.clone(), d.clone()), (1, a, d)]);
        let reduced = reduce_tensor(&t, 1000, &mut ctx).unwrap();
        assert_eq!(reduced.terms.len(), 1);
        assert_eq!(reduced.terms[0].0, 2);
    }

    #[test]
    fn reduce_is_idempotent() {
        let mut ctx = Ctx::new(256).unwrap();
        let a = Angle::from_radians(ctx.int(1), &mut ctx).unwrap();
        let t = regular_tetra(&a, &mut ctx).unwrap();
        let inv = dehn_invariant(&t, &mut ctx).unwrap();
        let once = reduce_tensor(&inv, 10_000, &mut ctx).unwrap();
        let twice = reduce_tensor(&once, 10_000, &mut ctx).unwrap();
        assert_eq!(once.terms.len(), twice.terms.len());
        assert_eq!(once.terms[0].0, twice.terms[0].0);
        assert_eq!(once.terms.len(), 1);
        assert_eq!(once.terms[0].0, 6);
    }
}

use astro_float::BigFloat;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::angle::Angle;
use crate::ctx::{decimal, Ctx};
use crate::{DehnError, Result};

/// A spherical simplex: unit vertices on the sphere in ℝⁿ together with its
/// edge list.
#[derive(Debug, Clone)]
pub struct SphericalSimplex {
    vertices: Vec<Vec<BigFloat>>,
    edges: Vec<(usize, usize)>,
}

impl SphericalSimplex {
    pub fn vertices(&self) -> &[Vec<BigFloat>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

fn dot(ctx: &Ctx, a: &[BigFloat], b: &[BigFloat]) -> BigFloat {
    let mut acc = ctx.int(0);
    for (x, y) in a.iter().zip(b) {
        acc = ctx.add(&acc, &ctx.mul(x, y));
    }
    acc
}

/// The regular spherical tetrahedron of side `a`: four unit vectors in ℝ⁴
/// with pairwise inner product cos a, obtained as the Cholesky rows of the
/// Gram matrix (1−c)I + cJ. Valid for 0 < a < arccos(−1/3), where the Gram
/// matrix is positive definite.
pub fn regular_tetra(a: &Angle, ctx: &mut Ctx) -> Result<SphericalSimplex> {
    let c = a.cos(ctx);
    let one = ctx.int(1);
    let n = 4;
    let mut gram = vec![vec![ctx.int(0); n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = if i == j { one.clone() } else { c.clone() };
        }
    }
    // Cholesky: rows of l are the vertices
    let mut l = vec![vec![ctx.int(0); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = gram[i][j].clone();
            for k in 0..j {
                sum = ctx.sub(&sum, &ctx.mul(&l[i][k], &l[j][k]));
            }
            if i == j {
                if !sum.is_positive() || ctx.below_pow2(&sum, 16 - ctx.bits() as i32) {
                    return Err(DehnError::Geometry(format!(
                        "side {} is outside (0, arccos(-1/3)): Gram matrix not positive definite",
                        a
                    )));
                }
                l[i][j] = ctx.sqrt(&sum)?;
            } else {
                l[i][j] = ctx.div(&sum, &l[j][j]);
            }
        }
    }
    let edges = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    Ok(SphericalSimplex { vertices: l, edges })
}

/// The spherical length of edge (i, j): the angle between the vertices.
pub fn edge_length(s: &SphericalSimplex, edge: (usize, usize), ctx: &mut Ctx) -> Result<Angle> {
    let (i, j) = edge;
    Angle::arccos(&dot(ctx, &s.vertices[i], &s.vertices[j]), ctx)
}

/// The dihedral angle at edge (i, j): project the two opposite vertices
/// onto the orthogonal complement of span(v_i, v_j) and take the angle
/// between the projections.
pub fn dihedral(s: &SphericalSimplex, edge: (usize, usize), ctx: &mut Ctx) -> Result<Angle> {
    let (i, j) = edge;
    if s.vertices.len() != 4 {
        return Err(DehnError::Geometry(
            "dihedral angles need a 4-vertex simplex".into(),
        ));
    }
    // orthonormalize the edge span
    let e1 = normalize(ctx, s.vertices[i].clone())?;
    let mut w = s.vertices[j].clone();
    let c = dot(ctx, &w, &e1);
    for (wk, ek) in w.iter_mut().zip(&e1) {
        *wk = ctx.sub(wk, &ctx.mul(&c, ek));
    }
    let e2 = normalize(ctx, w)?;
    let mut projections = Vec::new();
    for m in 0..4 {
        if m == i || m == j {
            continue;
        }
        let mut p = s.vertices[m].clone();
        let c1 = dot(ctx, &p, &e1);
        let c2 = dot(ctx, &p, &e2);
        for ((pk, ek1), ek2) in p.iter_mut().zip(&e1).zip(&e2) {
            *pk = ctx.sub(pk, &ctx.add(&ctx.mul(&c1, ek1), &ctx.mul(&c2, ek2)));
        }
        projections.push(normalize(ctx, p)?);
    }
    Angle::arccos(&dot(ctx, &projections[0], &projections[1]), ctx)
}

fn normalize(ctx: &mut Ctx, v: Vec<BigFloat>) -> Result<Vec<BigFloat>> {
    let norm2 = dot(ctx, &v, &v);
    if ctx.below_pow2(&norm2, 16 - ctx.bits() as i32) {
        return Err(DehnError::Geometry(
            "degenerate projection while computing a dihedral angle".into(),
        ));
    }
    let norm = ctx.sqrt(&norm2)?;
    Ok(v.iter().map(|x| ctx.div(x, &norm)).collect())
}

/// The closed dihedral-angle formula for the regular spherical tetrahedron:
/// cos D = cos a / (1 + 2 cos a).
pub fn tetra_dihedral_formula(a: &Angle, ctx: &mut Ctx) -> Result<Angle> {
    let c = a.cos(ctx);
    let denom = ctx.add(&ctx.int(1), &ctx.mul(&ctx.int(2), &c));
    if !denom.is_positive() || ctx.below_pow2(&denom, 16 - ctx.bits() as i32) {
        return Err(DehnError::Geometry(format!(
            "side {} is outside the valid range (1 + 2cos a must stay positive)",
            a
        )));
    }
    Angle::arccos(&ctx.div(&c, &denom), ctx)
}

impl Serialize for SphericalSimplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let verts: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(decimal).collect())
            .collect();
        let mut st = s.serialize_struct("SphericalSimplex", 2)?;
        st.serialize_field("vertices", &verts)?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::rat_from_i64;

    fn ctx256() -> Ctx {
        Ctx::new(256).unwrap()
    }

    #[test]
    fn right_angled_tetra_is_orthonormal_frame() {
        let mut ctx = ctx256();
        let a = Angle::from_pi_rational(rat_from_i64(1, 2), &mut ctx).unwrap();
        let t = regular_tetra(&a, &mut ctx).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let d = dot(&ctx, &t.vertices()[i], &t.vertices()[j]);
                let expect = ctx.int(if i == j { 1 } else { 0 });
                assert!(ctx.below_pow2(&ctx.sub(&d, &expect), -240));
            }
        }
    }

    #[test]
    fn edge_lengths_equal_side() {
        let mut ctx = ctx256();
        let a = Angle::from_radians(ctx.int(1), &mut ctx).unwrap();
        let t = regular_tetra(&a, &mut ctx).unwrap();
        for &e in t.edges() {
            let l = edge_length(&t, e, &mut ctx).unwrap();
            let diff = ctx.sub(l.value(), a.value());
            assert!(ctx.below_pow2(&diff, -240));
        }
        assert_eq!(t.edges().len(), 6);
    }

    #[test]
    fn dihedral_matches_formula_at_one_radian() {
        let mut ctx = ctx256();
        let a = Angle::from_radians(ctx.int(1), &mut ctx).unwrap();
        let t = regular_tetra(&a, &mut ctx).unwrap();
        let d = dihedral(&t, (0, 1), &mut ctx).unwrap();
        let f = tetra_dihedral_formula(&a, &mut ctx).unwrap();
        let diff = ctx.sub(d.value(), f.value());
        assert!(
            ctx.below_pow2(&diff, -200),
            "difference {}",
            decimal(&diff)
        );
    }

    #[test]
    fn right_angle_gives_right_dihedral_tagged() {
        let mut ctx = ctx256();
        let a = Angle::from_pi_rational(rat_from_i64(1, 2), &mut ctx).unwrap();
        let t = regular_tetra(&a, &mut ctx).unwrap();
        let d = dihedral(&t, (2, 3), &mut ctx).unwrap();
        assert_eq!(d.pi_rational(), Some(&rat_from_i64(1, 2)));
        let f = tetra_dihedral_formula(&a, &mut ctx).unwrap();
        assert_eq!(f.pi_rational(), Some(&rat_from_i64(1, 2)));
    }

    #[test]
    fn small_side_limit_is_euclidean() {
        let mut ctx = ctx256();
        let small = ctx.div(&ctx.int(1), &ctx.int(1_000_000));
        let a = Angle::from_radians(small, &mut ctx).unwrap();
        let t = regular_tetra(&a, &mut ctx).unwrap();
        let d = dihedral(&t, (0, 1), &mut ctx).unwrap();
        let cos_d = d.cos(&mut ctx);
        let third = ctx.div(&ctx.int(1), &ctx.int(3));
        let diff = ctx.sub(&cos_d, &third);
        // |cos D − 1/3| < 10⁻⁵ < 2⁻¹⁶
        assert!(ctx.below_pow2(&diff, -17), "diff {}", decimal(&diff));
    }

    #[test]
    fn large_side_limit_approaches_pi() {
        let mut ctx = ctx256();
        let third = ctx.div(&ctx.int(-1), &ctx.int(3));
        let top = ctx.acos(&third).unwrap();
        let eps = ctx.div(&ctx.int(1), &ctx.int(1_000_000));
        let a = Angle::from_radians(ctx.sub(&top, &eps), &mut ctx).unwrap();
        let d = tetra_dihedral_formula(&a, &mut ctx).unwrap();
        let pi = ctx.pi();
        let gap = ctx.sub(&pi, d.value());
        // D → π; the gap at 10⁻⁶ from the endpoint is below 10⁻² (≈ c·√ε)
        assert!(gap.is_positive());
        assert!(ctx.below_pow2(&gap, -6), "gap {}", decimal(&gap));
    }

    #[test]
    fn degenerate_side_rejected() {
        let mut ctx = ctx256();
        let third = ctx.div(&ctx.int(-1), &ctx.int(3));
        let top = Angle::arccos(&third, &mut ctx).unwrap();
        assert!(regular_tetra(&top, &mut ctx).is_err());
        let zero = Angle::from_pi_rational(rat_from_i64(0, 1), &mut ctx).unwrap();
        assert!(regular_tetra(&zero, &mut ctx).is_err());
    }

    #[test]
    fn formula_at_pi_over_three() {
        let mut ctx = ctx256();
        let a = Angle::from_pi_rational(rat_from_i64(1, 3), &mut ctx).unwrap();
        let d = tetra_dihedral_formula(&a, &mut ctx).unwrap();
        let cos_d = d.cos(&mut ctx);
        let quarter = ctx.div(&ctx.int(1), &ctx.int(4));
        assert!(ctx.below_pow2(&ctx.sub(&cos_d, &quarter), -240));
    }
}

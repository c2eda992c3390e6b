use std::collections::BTreeMap;

use exact_linalg::{dual_tuple, LinAlgError, Vector};
use serde::Serialize;

use crate::cone::{cover_check, CoverReport};
use crate::element::{Element, TensorElement};
use crate::generator::{join, normalize, Generator};
use crate::Result;

/// Compatibility of product and coproduct: `δ(μ(x ⊗ y))` against
/// `(μ⊗μ)(1⊗τ⊗1)(δx ⊗ δy)`, where the twist carries no sign.
pub fn bialg_check(x: &Generator, y: &Generator) -> Result<bool> {
    let ex = Element::single(x.clone(), 1);
    let ey = Element::single(y.clone(), 1);
    let route1 = Element::mu(&ex, &ey)?.delta()?;
    let dx = ex.delta()?;
    let dy = ey.delta()?;
    let mut route2 = TensorElement::zero(route1.grading().clone());
    for (l1, r1, c1) in dx.terms() {
        for (l2, r2, c2) in dy.terms() {
            let (l, sl) = join(l1, l2)?;
            let (r, sr) = join(r1, r2)?;
            route2.add_term(l, r, c1 * c2 * sl * sr)?;
        }
    }
    Ok(route1 == route2)
}

type Triple = BTreeMap<(Generator, Generator, Generator), i64>;

fn add_triple(map: &mut Triple, key: (Generator, Generator, Generator), c: i64) {
    let e = map.entry(key.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        map.remove(&key);
    }
}

/// Coassociativity at the representative level: `(δ⊗id)δ = (id⊗δ)δ` on the
/// class of the tuple, as maps into triple tensors.
pub fn coassoc_check(t: &[Vector]) -> Result<bool> {
    let dim = t.first().map_or(0, |v| v.dim());
    let x = Element::from_tuple(dim, t)?;
    let d = x.delta()?;
    let mut lhs = Triple::new();
    for (l, r, c) in d.terms() {
        for (l1, l2, c2) in Element::single(l.clone(), 1).delta()?.terms() {
            add_triple(&mut lhs, (l1.clone(), l2.clone(), r.clone()), c * c2);
        }
    }
    let mut rhs = Triple::new();
    for (l, r, c) in d.terms() {
        for (r1, r2, c2) in Element::single(r.clone(), 1).delta()?.terms() {
            add_triple(&mut rhs, (l.clone(), r1.clone(), r2.clone()), c * c2);
        }
    }
    Ok(lhs == rhs)
}

/// Counit laws `(ε⊗id)δ = id = (id⊗ε)δ` on the class of the tuple.
pub fn counit_check(t: &[Vector]) -> Result<bool> {
    let dim = t.first().map_or(0, |v| v.dim());
    let x = Element::from_tuple(dim, t)?;
    let d = x.delta()?;
    Ok(d.counit_left()? == x && d.counit_right()? == x)
}

/// Report of the geometric Hopf-identity certificate for one basis tuple.
#[derive(Debug, Clone, Serialize)]
pub struct HopfReport {
    pub n: usize,
    /// `μ(id⊗α)δ[t]` equals the cone sum `Σ_S [S ⊔ (S^c)^∨]` termwise.
    pub termwise_match: bool,
    /// `α(μ(α⊗id)δ[t])` equals `μ(id⊗α)δ[t]` termwise.
    pub transport_match: bool,
    pub cover: CoverReport,
    pub pass: bool,
}

/// Certifies the Hopf identity on the class of `t`: the algebraic side is
/// matched termwise against the cone sum, and the covering oracle certifies
/// that the cone sum is a decomposition of the sphere, hence zero.
pub fn hopf_check(t: &[Vector], samples: u64, seed: u64) -> Result<HopfReport> {
    let dim = t.first().map_or(0, |v| v.dim());
    let (gen, _) = normalize(dim, t)?.ok_or(LinAlgError::Degenerate)?;
    let n = gen.len();
    let x = Element::single(gen.clone(), 1);
    let d = x.delta()?;
    let e1 = d.mu_id_alpha()?;

    let duals = dual_tuple(gen.vectors())?;
    let mut expected = Element::zero(x.grading().clone());
    for mask in 0..(1u32 << n) {
        let tuple: Vec<Vector> = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    gen.vectors()[i].clone()
                } else {
                    duals[i].clone()
                }
            })
            .collect();
        let (g, s) = normalize(dim, &tuple)?.ok_or(LinAlgError::Degenerate)?;
        expected.add_term(g, s)?;
    }
    let termwise_match = e1 == expected;

    let e2 = d.mu_alpha_id()?;
    let transport_match = e2.antipode()? == e1;

    let cover = cover_check(gen.vectors(), samples, seed)?;
    let pass = termwise_match && transport_match && cover.pass;
    Ok(HopfReport {
        n,
        termwise_match,
        transport_match,
        cover,
        pass,
    })
}

use std::collections::BTreeMap;

use exact_linalg::{LinAlgError, Space, Vector};
use itertools::Itertools;
use num_traits::Zero;

use crate::complex::{build_complex, Chain, Flag};
use crate::{Result, StepError};

fn perm_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Spans of all subsets of the tuple: the finite sublattice through which
/// the apartment factors.
pub fn subset_lattice(dim: usize, t: &[Vector]) -> Result<Vec<Space>> {
    let mut out = Vec::with_capacity(1 << t.len());
    for mask in 0..(1u32 << t.len()) {
        let subset: Vec<Vector> = (0..t.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| t[i].clone())
            .collect();
        out.push(Space::span(dim, &subset)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Closes a lattice under pairwise intersections (to a fixpoint).
pub fn close_under_intersections(lattice: &[Space]) -> Result<Vec<Space>> {
    let mut out: Vec<Space> = lattice.to_vec();
    out.sort();
    out.dedup();
    loop {
        let mut added = Vec::new();
        for i in 0..out.len() {
            for j in i + 1..out.len() {
                let m = out[i].intersect(&out[j])?;
                if !out.contains(&m) && !added.contains(&m) {
                    added.push(m);
                }
            }
        }
        if added.is_empty() {
            return Ok(out);
        }
        out.extend(added);
        out.sort();
        out.dedup();
    }
}

fn apartment_chain(dim: usize, t: &[Vector]) -> Result<Option<Chain>> {
    if Space::span(dim, t)?.rank() != t.len() {
        return Ok(None);
    }
    let n = t.len();
    let mut chain = Chain::zero(n);
    if n == 0 {
        chain.add_term(vec![Space::zero(dim)], 1);
        return Ok(Some(chain));
    }
    for perm in (0..n).permutations(n) {
        let mut flag: Flag = vec![Space::zero(dim)];
        let mut acc: Vec<Vector> = Vec::with_capacity(n);
        for &i in &perm {
            acc.push(t[i].clone());
            flag.push(Space::span(dim, &acc)?);
        }
        chain.add_term(flag, perm_sign(&perm));
    }
    Ok(Some(chain))
}

/// The doubly-suspended apartment cycle of an independent tuple:
/// `Σ_σ sgn(σ)·[0 ⊊ ⟨v_σ(1)⟩ ⊊ … ⊊ V]`.
pub fn apartment_cycle(t: &[Vector]) -> Result<Chain> {
    let dim = t.first().map_or(0, |v| v.dim());
    apartment_chain(dim, t)?.ok_or_else(|| LinAlgError::Degenerate.into())
}

fn shuffle_words(m: usize, n: usize) -> Vec<Vec<bool>> {
    // false = advance left factor, true = advance right factor
    let mut out = Vec::new();
    for mask in 0..(1u32 << (m + n)) {
        if (mask.count_ones() as usize) != n {
            continue;
        }
        out.push((0..m + n).map(|i| mask >> i & 1 == 1).collect());
    }
    out
}

fn shuffle_sign(word: &[bool]) -> i64 {
    // inversions: pairs (right-move before left-move)
    let mut inversions = 0;
    let mut rights = 0;
    for &b in word {
        if b {
            rights += 1;
        } else {
            inversions += rights;
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Verifies the homology-level product formula: the shuffle product of two
/// apartment cycles, pushed through the direct-sum poset map, represents
/// the apartment class of the concatenation in the joint lattice.
pub fn chain_product_check(s: &[Vector], t: &[Vector]) -> Result<bool> {
    let dim = s
        .first()
        .or_else(|| t.first())
        .map_or(0, |v| v.dim());
    let span_s = Space::span(dim, s)?;
    let span_t = Space::span(dim, t)?;
    let orthogonal = span_s
        .basis()
        .iter()
        .all(|a| span_t.basis().iter().all(|b| a.dot(b).is_zero()));
    if !orthogonal {
        return Err(StepError::NotOrthogonal);
    }
    let joined: Vec<Vector> = s.iter().chain(t).cloned().collect();
    let (Some(left), Some(right)) = (apartment_chain(dim, s)?, apartment_chain(dim, t)?) else {
        // a degenerate factor makes both sides zero
        return Ok(true);
    };
    let rhs = apartment_chain(dim, &joined)?.expect("orthogonal independents stay independent");
    let (m, n) = (s.len(), t.len());
    let mut lhs = Chain::zero(m + n);
    for (fa, ca) in &left.terms {
        for (fb, cb) in &right.terms {
            for word in shuffle_words(m, n) {
                let mut flag: Flag = vec![Space::zero(dim)];
                let (mut p, mut q) = (0usize, 0usize);
                for &b in &word {
                    if b {
                        q += 1;
                    } else {
                        p += 1;
                    }
                    flag.push(fa[p].sum(&fb[q])?);
                }
                lhs.add_term(flag, ca * cb * shuffle_sign(&word));
            }
        }
    }
    let complex = build_complex(&subset_lattice(dim, &joined)?)?;
    complex.classes_equal(&lhs, &rhs)
}

type Tensor = BTreeMap<(Flag, Flag), i64>;

fn add_tensor(map: &mut Tensor, key: (Flag, Flag), c: i64) {
    if c == 0 {
        return;
    }
    let e = map.entry(key.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        map.remove(&key);
    }
}

/// Verifies the homology-level coproduct formula: cutting the apartment
/// cube at halves and collapsing sub-cubes yields
/// `Σ_S sgn(S)·apt(S) ⊗ apt(pr_{⟨S⟩^⊥} S^c)`.
pub fn chain_coproduct_check(t: &[Vector]) -> Result<bool> {
    let dim = t.first().map_or(0, |v| v.dim());
    let v = Space::span(dim, t)?;
    let n = t.len();
    if v.rank() != n {
        return Err(LinAlgError::Degenerate.into());
    }
    // left route: classify each permutation-simplex of the apartment by the
    // sub-cube piece it meets — the first k coordinates fall below the cut —
    // and collapse everything of lower dimension
    let mut lhs = Tensor::new();
    for perm in (0..n).permutations(n) {
        let sgn = perm_sign(&perm);
        for k in 0..=n {
            let mut left: Flag = vec![Space::zero(dim)];
            let mut acc: Vec<Vector> = Vec::new();
            for &i in &perm[..k] {
                acc.push(t[i].clone());
                left.push(Space::span(dim, &acc)?);
            }
            let block = v.complement_in(left.last().unwrap())?;
            let mut right: Flag = vec![Space::zero(dim)];
            let mut pacc: Vec<Vector> = Vec::new();
            for &i in &perm[k..] {
                pacc.push(block.project(&t[i])?);
                right.push(Space::span(dim, &pacc)?);
            }
            add_tensor(&mut lhs, (left, right), sgn);
        }
    }
    // right route: the subset-indexed formula, signs from the coordinate
    // shuffle moving S to the front
    let mut rhs = Tensor::new();
    for mask in 0..(1u32 << n) {
        let s_idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let c_idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        let word: Vec<usize> = s_idx.iter().chain(&c_idx).copied().collect();
        let sgn_s = perm_sign(&word);
        let s_vecs: Vec<Vector> = s_idx.iter().map(|&i| t[i].clone()).collect();
        let span_s = Space::span(dim, &s_vecs)?;
        let block = v.complement_in(&span_s)?;
        let proj: Vec<Vector> = c_idx
            .iter()
            .map(|&i| block.project(&t[i]))
            .collect::<exact_linalg::Result<_>>()?;
        let left = apartment_chain(dim, &s_vecs)?.expect("subset independent");
        let right = apartment_chain(dim, &proj)?.expect("projection independent");
        for (lf, lc) in &left.terms {
            for (rf, rc) in &right.terms {
                add_tensor(&mut rhs, (lf.clone(), rf.clone()), sgn_s * lc * rc);
            }
        }
    }
    Ok(lhs == rhs)
}

/// The translated simplicial relation for `dim+1` vectors: the alternating
/// sum of face apartments must be a boundary in the flag complex of the
/// subset lattice (closed under intersections when requested).
pub fn relation_boundary_check(t: &[Vector], close_intersections: bool) -> Result<(bool, bool)> {
    let dim = t.first().map_or(0, |v| v.dim());
    if t.len() != dim + 1 {
        return Err(LinAlgError::Degenerate.into());
    }
    let mut chain = Chain::zero(dim);
    for i in 0..t.len() {
        let face: Vec<Vector> = t
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let apt = apartment_chain(dim, &face)?.ok_or(LinAlgError::Degenerate)?;
        chain.add(&apt, if i % 2 == 0 { -1 } else { 1 });
    }
    let mut lattice = subset_lattice(dim, t)?;
    if close_intersections {
        lattice = close_under_intersections(&lattice)?;
    }
    let complex = build_complex(&lattice)?;
    let is_cycle = complex.boundary(&chain)?.is_zero();
    let is_boundary = complex.is_boundary(&chain)?;
    Ok((is_cycle, is_boundary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Signed;

    fn v(c: &[i64]) -> Vector {
        Vector::from_i64(c)
    }

    #[test]
    fn apartment_degree_one() {
        let c = apartment_cycle(&[v(&[3])]).unwrap();
        assert_eq!(c.degree, 1);
        assert_eq!(
            c.terms.iter().next().unwrap(),
            (&vec![Space::zero(1), Space::full(1)], &1)
        );
    }

    #[test]
    fn apartment_degree_two_signs() {
        let c = apartment_cycle(&[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(c.terms.len(), 2);
        let coeffs: Vec<i64> = c.terms.values().copied().collect();
        let mut sorted = coeffs.clone();
        sorted.sort();
        assert_eq!(sorted, vec![-1, 1]);
    }

    #[test]
    fn apartment_rejects_dependent() {
        assert!(apartment_cycle(&[v(&[1, 1]), v(&[2, 2])]).is_err());
    }

    #[test]
    fn apartment_is_a_cycle_and_generates() {
        for t in [
            vec![v(&[1, 0]), v(&[1, 1])],
            vec![v(&[1, 0, 1]), v(&[0, 1, 0]), v(&[2, 0, 1])],
        ] {
            let dim = t[0].dim();
            let complex = build_complex(&subset_lattice(dim, &t).unwrap()).unwrap();
            let c = apartment_cycle(&t).unwrap();
            assert!(complex.boundary(&c).unwrap().is_zero());
            assert_eq!(complex.homology(dim).0, 1);
            let coords = complex.class_coordinates(&c).unwrap();
            assert_eq!(coords.len(), 1);
            assert_eq!(coords[0].clone().abs(), BigInt::from(1));
        }
    }

    #[test]
    fn product_small_cases() {
        assert!(chain_product_check(&[v(&[1, 0])], &[v(&[0, 1])]).unwrap());
        assert!(
            chain_product_check(&[v(&[1, 0, 0])], &[v(&[0, 1, 0]), v(&[0, 1, 1])]).unwrap()
        );
    }

    #[test]
    fn product_degenerate_sides_are_zero() {
        // overlapping spans are rejected outright
        assert!(matches!(
            chain_product_check(&[v(&[1, 0])], &[v(&[1, 1])]),
            Err(StepError::NotOrthogonal)
        ));
        // dependent but orthogonal: both sides vanish
        assert!(chain_product_check(
            &[v(&[1, 0, 0]), v(&[2, 0, 0])],
            &[v(&[0, 1, 0])]
        )
        .unwrap());
    }

    #[test]
    fn coproduct_small_cases() {
        assert!(chain_coproduct_check(&[v(&[5])]).unwrap());
        assert!(chain_coproduct_check(&[v(&[1, 0]), v(&[0, 1])]).unwrap());
        assert!(chain_coproduct_check(&[v(&[1, 0]), v(&[1, 1])]).unwrap());
    }

    #[test]
    fn coproduct_n1_terms() {
        // only S = ∅ and S = {v}: 1⊗apt(v) + apt(v)⊗1
        let t = [v(&[2])];
        assert!(chain_coproduct_check(&t).unwrap());
    }

    #[test]
    fn relation_three_lines() {
        let (cycle, boundary) =
            relation_boundary_check(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])], false).unwrap();
        assert!(cycle && boundary);
        let (cycle, boundary) =
            relation_boundary_check(&[v(&[2, 1]), v(&[1, 3]), v(&[1, -1])], false).unwrap();
        assert!(cycle && boundary);
    }
}

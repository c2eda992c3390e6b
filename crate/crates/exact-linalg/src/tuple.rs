use num_traits::{Signed, Zero};

use crate::rat::Rat;
use crate::space::Space;
use crate::vector::Vector;
use crate::{LinAlgError, Result};

fn span_of(t: &[Vector]) -> Result<Space> {
    let dim = t.first().map_or(0, |v| v.dim());
    Space::span(dim, t)
}

/// The dual tuple of a linearly independent tuple, computed inside its span:
/// `v_i^dual` is orthogonal to every other `v_j`, pairs negatively with
/// `v_i`, and is rescaled to primitive integer coordinates.
pub fn dual_tuple(t: &[Vector]) -> Result<Vec<Vector>> {
    let w = span_of(t)?;
    if w.rank() != t.len() {
        return Err(LinAlgError::Degenerate);
    }
    let mut duals = Vec::with_capacity(t.len());
    for i in 0..t.len() {
        let others: Vec<Vector> = t
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let u = Space::span(w.ambient_dim(), &others)?;
        // pr onto (span t) minus u, applied to -v_i.
        let proj = u.project(&t[i])?;
        let dual = proj.sub(&t[i]).primitive();
        debug_assert!(dual.dot(&t[i]).is_negative());
        duals.push(dual);
    }
    Ok(duals)
}

/// Verifies, exactly on a basis of the span, that projecting onto the
/// complement of all-but-one vector factors through projecting onto the
/// complement of the span of the subset `s` first.
pub fn factorization_check(t: &[Vector], s: &[usize]) -> Result<bool> {
    let v = span_of(t)?;
    if v.rank() != t.len() {
        return Err(LinAlgError::Degenerate);
    }
    let s_vectors: Vec<Vector> = s.iter().map(|&i| t[i].clone()).collect();
    let span_s = Space::span(v.ambient_dim(), &s_vectors)?;
    let mid = v.complement_in(&span_s)?;
    for j in 0..t.len() {
        if s.contains(&j) {
            continue;
        }
        let others: Vec<Vector> = (0..t.len())
            .filter(|&k| k != j)
            .map(|k| t[k].clone())
            .collect();
        let lhs_space = v.complement_in(&Space::span(v.ambient_dim(), &others)?)?;

        let projected: Vec<Vector> = (0..t.len())
            .filter(|k| *k != j && !s.contains(k))
            .map(|k| mid.project(&t[k]))
            .collect::<Result<_>>()?;
        let rhs_space = v.complement_in(&Space::span(v.ambient_dim(), &projected)?)?;

        for x in v.basis() {
            let lhs = lhs_space.project(x)?;
            let rhs = rhs_space.project(&mid.project(x)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sign of the determinant of `t` expressed in the canonical echelon basis
/// of `v`; the canonical basis itself has sign +1.
pub fn orientation_sign(t: &[Vector], v: &Space) -> Result<i32> {
    if t.len() != v.rank() {
        return Err(LinAlgError::Degenerate);
    }
    let n = v.rank();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for x in t {
        rows.push(v.coordinates_of(x).ok_or(LinAlgError::Degenerate)?);
    }
    match det_sign(&mut rows, n) {
        0 => Err(LinAlgError::Degenerate),
        s => Ok(s),
    }
}

fn det_sign(rows: &mut [Vec<Rat>], n: usize) -> i32 {
    let mut sign = 1i32;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return 0;
        };
        if p != col {
            rows.swap(p, col);
            sign = -sign;
        }
        if rows[col][col].is_negative() {
            sign = -sign;
        }
        let pivot = rows[col][col].clone();
        for r in col + 1..n {
            if !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &pivot;
                for c in col..n {
                    let val = &rows[r][c] - &factor * &rows[col][c];
                    rows[r][c] = val;
                }
            }
        }
    }
    sign
}

use num_traits::{One, Zero};

use crate::rat::Rat;
use crate::space::{rref, solve_general};
use crate::vector::Vector;

/// Exact inverse of a square rational matrix given by rows, or `None` if
/// singular.
pub fn invert_matrix(rows: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = rows.len();
    let mut aug: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.len(), n);
        let mut r = row.clone();
        for j in 0..n {
            r.push(if i == j { Rat::one() } else { Rat::zero() });
        }
        aug.push(r);
    }
    let (reduced, _) = rref(aug);
    if reduced.len() != n {
        return None;
    }
    // Left block must be the identity; if so the right block is the inverse.
    let mut inv = vec![vec![Rat::zero(); n]; n];
    for row in &reduced {
        let p = row.iter().position(|c| !c.is_zero())?;
        if p >= n {
            return None;
        }
        inv[p] = row[n..].to_vec();
    }
    Some(inv)
}

/// Coefficients `c` with `sum c_i cols[i] = x`, or `None` if `x` is outside
/// the column span. Unique when the columns are independent.
pub fn solve_columns(cols: &[Vector], x: &Vector) -> Option<Vec<Rat>> {
    let dim = x.dim();
    let k = cols.len();
    let mut system = Vec::with_capacity(dim);
    for r in 0..dim {
        let mut row: Vec<Rat> = cols.iter().map(|c| c.coords()[r].clone()).collect();
        row.push(x.coords()[r].clone());
        system.push(row);
    }
    solve_general(system, k)
}

/// Applies a square rational matrix (rows) to a coordinate vector.
pub fn mat_vec(rows: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    rows.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_from_i64;

    #[test]
    fn invert_2x2() {
        let m = vec![
            vec![rat_from_i64(1, 1), rat_from_i64(2, 1)],
            vec![rat_from_i64(3, 1), rat_from_i64(4, 1)],
        ];
        let inv = invert_matrix(&m).unwrap();
        assert_eq!(inv[0][0], rat_from_i64(-2, 1));
        assert_eq!(inv[0][1], rat_from_i64(1, 1));
        assert_eq!(inv[1][0], rat_from_i64(3, 2));
        assert_eq!(inv[1][1], rat_from_i64(-1, 2));
    }

    #[test]
    fn solve_columns_unique() {
        let cols = vec![Vector::from_i64(&[1, 0]), Vector::from_i64(&[1, 1])];
        let c = solve_columns(&cols, &Vector::from_i64(&[3, 2])).unwrap();
        assert_eq!(c, vec![rat_from_i64(1, 1), rat_from_i64(2, 1)]);
    }

    #[test]
    fn solve_columns_outside_span() {
        let cols = vec![Vector::from_i64(&[1, 0, 0])];
        assert!(solve_columns(&cols, &Vector::from_i64(&[0, 1, 0])).is_none());
    }
}

use std::fmt;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::rat::Rat;
use crate::vector::Vector;
use crate::{LinAlgError, Result};

/// A linear subspace of the ambient `Q^N`, stored as a reduced row-echelon
/// basis: pivot columns strictly increasing, pivots 1, zeros above and below
/// each pivot. The canonical form is unique, so `PartialEq` decides
/// subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Space {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Space {
    pub fn zero(ambient_dim: usize) -> Self {
        Space {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut coords = vec![Rat::zero(); ambient_dim];
                coords[i] = Rat::from_integer(1.into());
                Vector::new(coords)
            })
            .collect();
        Space { ambient_dim, basis }
    }

    /// Canonical space spanned by the given vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        for v in vectors {
            v.check_dim(ambient_dim)?;
        }
        let rows: Vec<Vec<Rat>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
        let (rref, _) = rref(rows);
        Ok(Space {
            ambient_dim,
            basis: rref.into_iter().map(Vector::new).collect(),
        })
    }

    pub fn line(v: &Vector) -> Result<Self> {
        Space::span(v.dim(), std::slice::from_ref(v))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of `x` in the canonical basis, or `None` if `x` is
    /// outside the subspace.
    pub fn coordinates_of(&self, x: &Vector) -> Option<Vec<Rat>> {
        if x.dim() != self.ambient_dim {
            return None;
        }
        // Echelon pivots make this a direct read-off followed by a residue
        // check.
        let mut coeffs = Vec::with_capacity(self.basis.len());
        let mut residue = x.clone();
        for row in &self.basis {
            let pivot = pivot_col(row).expect("canonical basis rows are nonzero");
            let c = residue.coords()[pivot].clone();
            residue = residue.sub(&row.scale(&c));
            coeffs.push(c);
        }
        if residue.is_zero() {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains_vector(&self, x: &Vector) -> bool {
        self.coordinates_of(x).is_some()
    }

    pub fn contains_space(&self, other: &Space) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// Sum of subspaces (the span of the union of the bases).
    pub fn sum(&self, other: &Space) -> Result<Space> {
        if other.ambient_dim != self.ambient_dim {
            return Err(LinAlgError::AmbientMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut all = self.basis.clone();
        all.extend_from_slice(&other.basis);
        Space::span(self.ambient_dim, &all)
    }

    /// Exact intersection of subspaces.
    pub fn intersect(&self, other: &Space) -> Result<Space> {
        if other.ambient_dim != self.ambient_dim {
            return Err(LinAlgError::AmbientMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Space::zero(self.ambient_dim));
        }
        // x = c.A = d.B; solve [A^T | -B^T] (c,d) = 0 and read x off from c.
        let k = self.basis.len();
        let l = other.basis.len();
        let mut rows = Vec::with_capacity(self.ambient_dim);
        for i in 0..self.ambient_dim {
            let mut row = Vec::with_capacity(k + l);
            for b in &self.basis {
                row.push(b.coords()[i].clone());
            }
            for b in &other.basis {
                row.push(-&b.coords()[i]);
            }
            rows.push(row);
        }
        let null = nullspace(rows, k + l);
        let vectors: Vec<Vector> = null
            .iter()
            .map(|coeffs| {
                let mut acc = Vector::zero(self.ambient_dim);
                for (c, b) in coeffs.iter().take(k).zip(&self.basis) {
                    acc = acc.add(&b.scale(c));
                }
                acc
            })
            .collect();
        Space::span(self.ambient_dim, &vectors)
    }

    /// Orthogonal complement of `u` inside `self` (standard dot product).
    pub fn complement_in(&self, u: &Space) -> Result<Space> {
        if !self.contains_space(u) {
            return Err(LinAlgError::NotContained);
        }
        if u.is_zero() {
            return Ok(self.clone());
        }
        // Parametrize w = sum c_i v_i over self's basis and impose w . u_j = 0.
        let m = self.basis.len();
        let rows: Vec<Vec<Rat>> = u
            .basis
            .iter()
            .map(|uj| self.basis.iter().map(|vi| uj.dot(vi)).collect())
            .collect();
        let null = nullspace(rows, m);
        let vectors: Vec<Vector> = null
            .iter()
            .map(|coeffs| {
                let mut acc = Vector::zero(self.ambient_dim);
                for (c, b) in coeffs.iter().zip(&self.basis) {
                    acc = acc.add(&b.scale(c));
                }
                acc
            })
            .collect();
        Space::span(self.ambient_dim, &vectors)
    }

    /// Orthogonal projection of `x` onto `self`.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.ambient_dim)?;
        if self.is_zero() {
            return Ok(Vector::zero(self.ambient_dim));
        }
        // Gram-matrix normal equations over the canonical basis.
        let k = self.basis.len();
        let mut system: Vec<Vec<Rat>> = Vec::with_capacity(k);
        for i in 0..k {
            let mut row: Vec<Rat> = (0..k).map(|j| self.basis[i].dot(&self.basis[j])).collect();
            row.push(self.basis[i].dot(x));
            system.push(row);
        }
        let sol = solve_square(system, k).expect("Gram matrix of a basis is invertible");
        let mut acc = Vector::zero(self.ambient_dim);
        for (c, b) in sol.iter().zip(&self.basis) {
            acc = acc.add(&b.scale(c));
        }
        Ok(acc)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", b)?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Space {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Space", 2)?;
        st.serialize_field("ambient_dim", &self.ambient_dim)?;
        st.serialize_field("basis", &self.basis)?;
        st.end()
    }
}

fn pivot_col(v: &Vector) -> Option<usize> {
    v.coords().iter().position(|c| !c.is_zero())
}

/// Reduced row-echelon form; returns the nonzero rows and the number of row
/// swaps performed (used for determinant signs elsewhere).
pub(crate) fn rref(mut rows: Vec<Vec<Rat>>) -> (Vec<Vec<Rat>>, usize) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut swaps = 0;
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        let Some(r) = (pivot_row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        if r != pivot_row {
            rows.swap(r, pivot_row);
            swaps += 1;
        }
        let inv = {
            let p = &rows[pivot_row][col];
            Rat::from_integer(1.into()) / p
        };
        for c in col..ncols {
            let v = &rows[pivot_row][c] * &inv;
            rows[pivot_row][c] = v;
        }
        for r2 in 0..nrows {
            if r2 != pivot_row && !rows[r2][col].is_zero() {
                let factor = rows[r2][col].clone();
                for c in col..ncols {
                    let v = &rows[r2][c] - &factor * &rows[pivot_row][c];
                    rows[r2][c] = v;
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    (rows, swaps)
}

/// Basis of the nullspace of the matrix (rows) acting on `Q^ncols`.
pub(crate) fn nullspace(rows: Vec<Vec<Rat>>, ncols: usize) -> Vec<Vec<Rat>> {
    let (rref_rows, _) = rref(rows);
    let pivots: Vec<usize> = rref_rows
        .iter()
        .map(|r| r.iter().position(|c| !c.is_zero()).unwrap())
        .collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::from_integer(1.into());
        for (row, &p) in rref_rows.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Solves a square augmented system (`k` rows of length `k+1`).
pub(crate) fn solve_square(system: Vec<Vec<Rat>>, k: usize) -> Option<Vec<Rat>> {
    let (r, _) = rref(system);
    if r.len() != k {
        return None;
    }
    // After full reduction each row is e_i | x_i.
    let mut sol = vec![Rat::zero(); k];
    for row in &r {
        let p = row.iter().position(|c| !c.is_zero())?;
        if p == k {
            return None; // inconsistent
        }
        sol[p] = row[k].clone();
    }
    Some(sol)
}

/// Solves a general augmented system (rows of length `ncols+1`); returns any
/// solution if consistent.
pub(crate) fn solve_general(system: Vec<Vec<Rat>>, ncols: usize) -> Option<Vec<Rat>> {
    let (r, _) = rref(system);
    let mut sol = vec![Rat::zero(); ncols];
    for row in &r {
        let p = row.iter().position(|c| !c.is_zero())?;
        if p == ncols {
            return None;
        }
        sol[p] = row[ncols].clone();
    }
    Some(sol)
}

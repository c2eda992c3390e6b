use std::collections::BTreeMap;
use std::fmt;

use exact_linalg::Space;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::snf::{identity, smith, solve_integer, torsion, zero_mat, Mat, Smith};
use crate::{Result, StepError};

/// A strict chain of subspaces; a k-cell when it has k+1 entries.
pub type Flag = Vec<Space>;

/// The order complex of a finite subspace lattice, with the cells missing
/// the bottom or the top marked as collapsed: the finite model of the
/// doubly-suspended building, whose positive-degree homology is computed
/// relative to the collapsed part.
#[derive(Debug, Clone)]
pub struct FlagComplex {
    lattice: Vec<Space>,
    bottom: Space,
    top: Space,
    /// Non-collapsed cells per degree, sorted; these carry the chain groups.
    cells: Vec<Vec<Flag>>,
    /// Collapsed cells per degree, sorted.
    collapsed: Vec<Vec<Flag>>,
}

/// An integer cellular chain supported on non-collapsed cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub terms: BTreeMap<Flag, i64>,
}

impl Chain {
    pub fn zero(degree: usize) -> Chain {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, flag: Flag, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(flag.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&flag);
        }
    }

    pub fn add(&mut self, other: &Chain, scale: i64) {
        debug_assert_eq!(self.degree, other.degree);
        for (f, c) in &other.terms {
            self.add_term(f.clone(), c * scale);
        }
    }
}

/// Builds the complex of all strict flags in the lattice. The lattice must
/// contain a bottom (the zero space) and a top containing every member.
pub fn build_complex(lattice: &[Space]) -> Result<FlagComplex> {
    if lattice.is_empty() {
        return Err(StepError::MissingBottomOrTop);
    }
    let mut elems: Vec<Space> = lattice.to_vec();
    elems.sort();
    elems.dedup();
    let dim = elems[0].ambient_dim();
    if elems.iter().any(|s| s.ambient_dim() != dim) {
        return Err(StepError::LinAlg(exact_linalg::LinAlgError::AmbientMismatch {
            expected: dim,
            got: 0,
        }));
    }
    let bottom = Space::zero(dim);
    if !elems.contains(&bottom) {
        return Err(StepError::MissingBottomOrTop);
    }
    let top = elems
        .iter()
        .find(|t| elems.iter().all(|s| t.contains_space(s)))
        .cloned()
        .ok_or(StepError::MissingBottomOrTop)?;
    // sort by rank so chains can be extended in order
    let mut by_rank = elems.clone();
    by_rank.sort_by_key(|s| s.rank());
    let mut cells: Vec<Vec<Flag>> = Vec::new();
    let mut collapsed: Vec<Vec<Flag>> = Vec::new();
    let mut stack: Vec<Flag> = by_rank.iter().map(|s| vec![s.clone()]).collect();
    while let Some(flag) = stack.pop() {
        let degree = flag.len() - 1;
        while cells.len() <= degree {
            cells.push(Vec::new());
            collapsed.push(Vec::new());
        }
        let keep = flag.first() == Some(&bottom) && flag.last() == Some(&top);
        if keep {
            cells[degree].push(flag.clone());
        } else {
            collapsed[degree].push(flag.clone());
        }
        let last = flag.last().unwrap();
        for s in &by_rank {
            if s.rank() > last.rank() && s.contains_space(last) && s != last {
                let mut next = flag.clone();
                next.push(s.clone());
                stack.push(next);
            }
        }
    }
    for v in cells.iter_mut().chain(collapsed.iter_mut()) {
        v.sort();
    }
    Ok(FlagComplex {
        lattice: elems,
        bottom,
        top,
        cells,
        collapsed,
    })
}

impl FlagComplex {
    pub fn lattice(&self) -> &[Space] {
        &self.lattice
    }

    pub fn bottom(&self) -> &Space {
        &self.bottom
    }

    pub fn top(&self) -> &Space {
        &self.top
    }

    /// Largest degree with any cell.
    pub fn dimension(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    /// Non-collapsed k-cells, sorted.
    pub fn cells(&self, k: usize) -> &[Flag] {
        self.cells.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn collapsed_cells(&self, k: usize) -> &[Flag] {
        self.collapsed.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    fn cell_index(&self, k: usize, flag: &Flag) -> Option<usize> {
        self.cells(k).binary_search(flag).ok()
    }

    /// Boundary of one cell inside the quotient: faces that collapse vanish.
    pub fn cell_boundary(&self, flag: &Flag) -> Chain {
        let k = flag.len() - 1;
        let mut out = Chain::zero(k.saturating_sub(1));
        if k == 0 {
            return out;
        }
        for i in 0..flag.len() {
            let face: Flag = flag
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, s)| s.clone())
                .collect();
            if self.cell_index(k - 1, &face).is_some() {
                out.add_term(face, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        out
    }

    /// Matrix of `∂_k : C_k → C_{k−1}` over the non-collapsed cells; rows
    /// are (k−1)-cells, columns k-cells.
    pub fn boundary_matrix(&self, k: usize) -> Mat {
        let cols = self.cells(k).len();
        let rows = if k == 0 { 0 } else { self.cells(k - 1).len() };
        let mut m = zero_mat(rows, cols);
        if k == 0 {
            return m;
        }
        for (j, flag) in self.cells(k).iter().enumerate() {
            for (face, c) in &self.cell_boundary(flag).terms {
                let i = self
                    .cell_index(k - 1, face)
                    .expect("boundary face indexed");
                m[i][j] = BigInt::from(*c);
            }
        }
        m
    }

    /// Boundary of a chain in the quotient complex.
    pub fn boundary(&self, chain: &Chain) -> Result<Chain> {
        let mut out = Chain::zero(chain.degree.saturating_sub(1));
        for (flag, c) in &chain.terms {
            if self.cell_index(chain.degree, flag).is_none() {
                return Err(StepError::MissingCell);
            }
            out.add(&self.cell_boundary(flag), *c);
        }
        Ok(out)
    }

    /// Betti number and torsion coefficients of `H_k`.
    pub fn homology(&self, k: usize) -> (usize, Vec<BigInt>) {
        let ck = self.cells(k).len();
        if ck == 0 {
            return (0, Vec::new());
        }
        let rank_in = smith(&self.boundary_matrix(k)).rank;
        let higher = smith(&self.boundary_matrix(k + 1));
        let betti = ck - rank_in - higher.rank;
        (betti, torsion(&higher))
    }

    fn chain_vector(&self, chain: &Chain) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.cells(chain.degree).len()];
        for (flag, c) in &chain.terms {
            let i = self
                .cell_index(chain.degree, flag)
                .ok_or(StepError::MissingCell)?;
            v[i] = BigInt::from(*c);
        }
        Ok(v)
    }

    /// Whether the chain is the boundary of an integer chain one degree up.
    pub fn is_boundary(&self, chain: &Chain) -> Result<bool> {
        let v = self.chain_vector(chain)?;
        Ok(solve_integer(&self.boundary_matrix(chain.degree + 1), &v).is_some())
    }

    /// Whether two cycles represent the same homology class.
    pub fn classes_equal(&self, a: &Chain, b: &Chain) -> Result<bool> {
        let mut diff = a.clone();
        diff.add(b, -1);
        self.is_boundary(&diff)
    }

    /// Coordinates of the class of a cycle on the free part of `H_k`, in
    /// the basis produced by Smith reduction (order fixed by the complex).
    pub fn class_coordinates(&self, chain: &Chain) -> Result<Vec<BigInt>> {
        let k = chain.degree;
        let z = self.chain_vector(chain)?;
        let cols = self.cells(k).len();
        let bm = self.boundary_matrix(k);
        // a 0-row matrix drops its column count, so build its (trivial)
        // Smith form by hand: everything is a cycle
        let s = if bm.is_empty() {
            Smith {
                d: Vec::new(),
                u: Vec::new(),
                v: identity(cols),
                rank: 0,
            }
        } else {
            smith(&bm)
        };
        // kernel coordinates: y = v⁻¹ z must vanish on the first `rank` slots
        let y = solve_integer(&s.v, &z).expect("unimodular");
        if y[..s.rank].iter().any(|c| !c.is_zero()) {
            return Err(StepError::NotACycle);
        }
        let kernel_dim = cols - s.rank;
        // image of the higher boundary, in kernel coordinates
        let higher = self.boundary_matrix(k + 1);
        let hcols = if higher.is_empty() { 0 } else { higher[0].len() };
        let mut img = zero_mat(kernel_dim, hcols);
        for j in 0..hcols {
            let w: Vec<BigInt> = (0..cols).map(|i| higher[i][j].clone()).collect();
            let yw = solve_integer(&s.v, &w).expect("unimodular");
            for (i, val) in yw[s.rank..].iter().enumerate() {
                img[i][j] = val.clone();
            }
        }
        let s2 = smith(&img);
        let a = &y[s.rank..];
        let coords: Vec<BigInt> = s2
            .u
            .iter()
            .map(|row| row.iter().zip(a).map(|(m, v)| m * v).sum())
            .collect();
        Ok(coords[s2.rank..].to_vec())
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (flag, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if *c < 0 { "-" } else { "+" })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}·", c.abs())?;
            }
            write!(f, "[")?;
            for (j, s) in flag.iter().enumerate() {
                if j > 0 {
                    write!(f, "⊊")?;
                }
                write!(f, "dim{}", s.rank())?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coefficient: i64,
            flag: &'a [Space],
        }
        let mut st = s.serialize_struct("Chain", 2)?;
        st.serialize_field("degree", &self.degree)?;
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(f, &c)| Term {
                coefficient: c,
                flag: f,
            })
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl Serialize for FlagComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FlagComplex", 3)?;
        st.serialize_field("lattice", &self.lattice)?;
        st.serialize_field("cells", &self.cells)?;
        st.serialize_field("collapsed", &self.collapsed)?;
        st.end()
    }
}

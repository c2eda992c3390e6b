use exact_linalg::{
    dual_tuple, invert_matrix, mat_vec, rat_to_string, solve_columns, LinAlgError, Rat, Space,
    Vector,
};
use num_traits::Signed;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::rng::{random_coords, seeded};
use crate::{HopfError, Result};

/// One cone `S ⊔ (S^c)^∨` containing a point with nonnegative coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeWitness {
    /// Indices (0-based) of the tuple vectors spanning the cone directly.
    pub subset: Vec<usize>,
    /// Coefficients on the subset vectors, in subset order.
    pub a: Vec<Rat>,
    /// Coefficients on the duals of the complement, in complement order.
    pub b: Vec<Rat>,
    /// All coefficients strictly positive.
    pub strict: bool,
}

/// Where a point sits in the cone decomposition of the span: a unique
/// strictly-interior cone in the generic case, or the list of cones meeting
/// it on their boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocateResult {
    pub interior: Option<ConeWitness>,
    pub boundary: Vec<ConeWitness>,
}

impl Serialize for ConeWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ConeWitness", 4)?;
        st.serialize_field("subset", &self.subset)?;
        let a: Vec<String> = self.a.iter().map(rat_to_string).collect();
        let b: Vec<String> = self.b.iter().map(rat_to_string).collect();
        st.serialize_field("a", &a)?;
        st.serialize_field("b", &b)?;
        st.serialize_field("strict", &self.strict)?;
        st.end()
    }
}

impl Serialize for LocateResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LocateResult", 2)?;
        st.serialize_field("interior", &self.interior)?;
        st.serialize_field("boundary", &self.boundary)?;
        st.end()
    }
}

/// Finds the cone of the decomposition containing `x` by solving, for every
/// subset `S`, the exact system `x = Σ_{i∈S} a_i v_i + Σ_{j∉S} b_j v_j^∨`.
pub fn locate(x: &Vector, t: &[Vector]) -> Result<LocateResult> {
    let n = t.len();
    let dim = x.dim();
    let span = Space::span(dim, t)?;
    if span.rank() != n {
        return Err(LinAlgError::Degenerate.into());
    }
    if !span.contains_vector(x) {
        return Err(HopfError::OutsideSpan);
    }
    let duals = dual_tuple(t)?;
    let mut interior = None;
    let mut boundary = Vec::new();
    for mask in 0..(1u32 << n) {
        let cols: Vec<Vector> = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    t[i].clone()
                } else {
                    duals[i].clone()
                }
            })
            .collect();
        let coeffs = solve_columns(&cols, x).ok_or(LinAlgError::Degenerate)?;
        if coeffs.iter().any(|c| c.is_negative()) {
            continue;
        }
        let strict = coeffs.iter().all(|c| c.is_positive());
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let a: Vec<Rat> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| coeffs[i].clone())
            .collect();
        let b: Vec<Rat> = (0..n)
            .filter(|i| mask >> i & 1 == 0)
            .map(|i| coeffs[i].clone())
            .collect();
        let witness = ConeWitness {
            subset,
            a,
            b,
            strict,
        };
        if strict {
            interior = Some(witness);
        } else {
            boundary.push(witness);
        }
    }
    Ok(LocateResult { interior, boundary })
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverFailure {
    pub sample: u64,
    /// Coordinates of the point in the canonical basis of the span.
    pub coords: Vec<String>,
    pub reason: String,
}

/// Monte-Carlo certificate that the cones `S ⊔ (S^c)^∨` cover the span with
/// pairwise disjoint interiors.
#[derive(Debug, Clone, Serialize)]
pub struct CoverReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    /// Samples landing in at least one cone.
    pub covered: u64,
    /// Samples strictly interior to exactly one cone.
    pub unique: u64,
    /// Samples on some cone boundary (skipped for the uniqueness count).
    pub ties: u64,
    pub pass: bool,
    pub counterexample: Option<CoverFailure>,
}

struct Prepared {
    n: usize,
    // one inverse matrix per subset, acting on span coordinates
    inverses: Vec<Vec<Vec<Rat>>>,
}

fn prepare(t: &[Vector]) -> Result<Prepared> {
    let n = t.len();
    let dim = t.first().map_or(0, |v| v.dim());
    let span = Space::span(dim, t)?;
    if span.rank() != n {
        return Err(LinAlgError::Degenerate.into());
    }
    let duals = dual_tuple(t)?;
    let coords = |v: &Vector| span.coordinates_of(v).ok_or(LinAlgError::Degenerate);
    let t_coords: Vec<Vec<Rat>> = t.iter().map(coords).collect::<std::result::Result<_, _>>()?;
    let d_coords: Vec<Vec<Rat>> = duals
        .iter()
        .map(coords)
        .collect::<std::result::Result<_, _>>()?;
    let mut inverses = Vec::with_capacity(1 << n);
    for mask in 0..(1u32 << n) {
        // rows of the matrix whose columns are the cone edges
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if mask >> c & 1 == 1 {
                            t_coords[c][r].clone()
                        } else {
                            d_coords[c][r].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        inverses.push(invert_matrix(&rows).ok_or(LinAlgError::Degenerate)?);
    }
    Ok(Prepared { n, inverses })
}

#[derive(Debug, Clone, Copy)]
struct SampleOutcome {
    covered: bool,
    strict: u32,
    tie: bool,
}

fn classify(prep: &Prepared, point: &[Rat]) -> SampleOutcome {
    let mut out = SampleOutcome {
        covered: false,
        strict: 0,
        tie: false,
    };
    for inv in &prep.inverses {
        let coeffs = mat_vec(inv, point);
        if coeffs.iter().any(|c| c.is_negative()) {
            continue;
        }
        out.covered = true;
        if coeffs.iter().all(|c| c.is_positive()) {
            out.strict += 1;
        } else {
            out.tie = true;
        }
    }
    out
}

fn summarize(
    prep: &Prepared,
    points: Vec<Vec<Rat>>,
    outcomes: Vec<SampleOutcome>,
    samples: u64,
    seed: u64,
) -> CoverReport {
    let mut covered = 0;
    let mut unique = 0;
    let mut ties = 0;
    let mut counterexample = None;
    for (i, (o, p)) in outcomes.iter().zip(&points).enumerate() {
        if o.covered {
            covered += 1;
        }
        if o.strict == 1 {
            unique += 1;
        }
        if o.tie {
            ties += 1;
        }
        if counterexample.is_none() {
            let reason = if !o.covered {
                Some("no cone admits a nonnegative decomposition")
            } else if o.strict > 1 {
                Some("strictly interior to more than one cone")
            } else {
                None
            };
            if let Some(reason) = reason {
                counterexample = Some(CoverFailure {
                    sample: i as u64,
                    coords: p.iter().map(rat_to_string).collect(),
                    reason: reason.to_string(),
                });
            }
        }
    }
    CoverReport {
        n: prep.n,
        samples,
        seed,
        covered,
        unique,
        ties,
        pass: counterexample.is_none(),
        counterexample,
    }
}

fn sample_points(n: usize, samples: u64, seed: u64) -> Vec<Vec<Rat>> {
    let mut rng = seeded(seed);
    (0..samples).map(|_| random_coords(&mut rng, n)).collect()
}

/// Samples seeded pseudo-random points of the span and checks coverage and
/// interior disjointness of the cone decomposition. Evaluates samples in
/// parallel when the `parallel` feature is enabled; the report is identical
/// either way.
pub fn cover_check(t: &[Vector], samples: u64, seed: u64) -> Result<CoverReport> {
    let prep = prepare(t)?;
    let points = sample_points(prep.n, samples, seed);
    #[cfg(feature = "parallel")]
    let outcomes: Vec<SampleOutcome> = points.par_iter().map(|p| classify(&prep, p)).collect();
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<SampleOutcome> = points.iter().map(|p| classify(&prep, p)).collect();
    Ok(summarize(&prep, points, outcomes, samples, seed))
}

/// Sequential reference implementation of [`cover_check`].
pub fn cover_check_seq(t: &[Vector], samples: u64, seed: u64) -> Result<CoverReport> {
    let prep = prepare(t)?;
    let points = sample_points(prep.n, samples, seed);
    let outcomes: Vec<SampleOutcome> = points.iter().map(|p| classify(&prep, p)).collect();
    Ok(summarize(&prep, points, outcomes, samples, seed))
}

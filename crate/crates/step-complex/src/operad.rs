use exact_linalg::{rat_to_string, Rat, Space};
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::step::StepFn;
use crate::{Result, StepError};

/// A tuple of rectilinear subintervals of `[0,1]` with disjoint interiors:
/// one operation of the little-intervals operad, in the given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSystem {
    intervals: Vec<(Rat, Rat)>,
}

impl CutSystem {
    pub fn new(intervals: Vec<(Rat, Rat)>) -> Result<CutSystem> {
        for (a, b) in &intervals {
            if a < &Rat::zero() || b > &Rat::one() || a >= b {
                return Err(StepError::BadCut(format!(
                    "bad interval [{},{}]",
                    rat_to_string(a),
                    rat_to_string(b)
                )));
            }
        }
        let mut sorted = intervals.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(StepError::BadCut("interval interiors overlap".into()));
            }
        }
        Ok(CutSystem { intervals })
    }

    /// The operad unit: the identity interval.
    pub fn unit() -> CutSystem {
        CutSystem {
            intervals: vec![(Rat::zero(), Rat::one())],
        }
    }

    /// The n equal pieces of `[0,1]`; `halves(2)` is the cut at 1/2.
    pub fn equal_pieces(n: usize) -> CutSystem {
        let n_rat = Rat::from_integer((n as i64).into());
        let intervals = (0..n)
            .map(|i| {
                (
                    Rat::from_integer((i as i64).into()) / &n_rat,
                    Rat::from_integer((i as i64 + 1).into()) / &n_rat,
                )
            })
            .collect();
        CutSystem { intervals }
    }

    pub fn arity(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[(Rat, Rat)] {
        &self.intervals
    }

    pub fn permuted(&self, perm: &[usize]) -> CutSystem {
        CutSystem {
            intervals: perm.iter().map(|&i| self.intervals[i].clone()).collect(),
        }
    }
}

impl Serialize for CutSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.intervals.len()))?;
        for (a, b) in &self.intervals {
            seq.serialize_element(&[rat_to_string(a), rat_to_string(b)])?;
        }
        seq.end()
    }
}

/// Operad composition: plug each `f_i` affinely into the i-th interval of
/// `e`.
pub fn operad_compose(e: &CutSystem, fs: &[CutSystem]) -> Result<CutSystem> {
    if fs.len() != e.arity() {
        return Err(StepError::BadCut(format!(
            "arity mismatch: {} slots, {} arguments",
            e.arity(),
            fs.len()
        )));
    }
    let mut intervals = Vec::new();
    for ((a, b), f) in e.intervals.iter().zip(fs) {
        let width = b - a;
        for (c, d) in &f.intervals {
            intervals.push((a + c * &width, a + d * &width));
        }
    }
    CutSystem::new(intervals)
}

/// The cut map: reads off the flag `U_i = φ(b_i)` along the first `n−1`
/// intervals (in ascending order), tops it off with `U_n` = ambient, and
/// returns the rescaled restrictions re-expressed in `U_i ⊖ U_{i−1}`, or
/// `None` (the basepoint) when some right endpoint hits a jump of `φ` or a
/// restriction fails to start at zero and sweep its whole block — together
/// these force every jump of `φ` to happen inside one of the intervals.
pub fn theta(e: &CutSystem, phi: &StepFn) -> Result<Option<Vec<StepFn>>> {
    if phi.is_basepoint() {
        return Ok(None);
    }
    let n = e.arity();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| e.intervals[i].partial_cmp(&e.intervals[j]).unwrap());
    let cuts = phi.cut_points();
    let mut out: Vec<Option<StepFn>> = vec![None; n];
    let mut prev = Space::zero(phi.ambient().ambient_dim());
    for (pos, &idx) in order.iter().enumerate() {
        let (a, b) = &e.intervals[idx];
        if cuts.contains(b) {
            return Ok(None);
        }
        let u = if pos + 1 == n {
            phi.ambient().clone()
        } else {
            phi.value_at(b).clone()
        };
        let block = u.complement_in(&prev)?;
        let mut steps = Vec::new();
        for (len, value) in phi.restrict(a, b) {
            let projected: Vec<_> = value
                .basis()
                .iter()
                .map(|v| block.project(v))
                .collect::<exact_linalg::Result<_>>()?;
            steps.push((len, Space::span(block.ambient_dim(), &projected)?));
        }
        let piece = StepFn::new(block, steps)?;
        if piece.is_basepoint() {
            return Ok(None);
        }
        out[idx] = Some(piece);
        prev = u;
    }
    Ok(Some(out.into_iter().map(Option::unwrap).collect()))
}

/// The product/coproduct exchange at the point-set level:
/// `θ(e, φ⊕ψ) = θ(e,φ) ⊕ θ(e,ψ)` componentwise, basepoints matching.
pub fn prod_coprod_check(phi: &StepFn, psi: &StepFn, e: &CutSystem) -> Result<bool> {
    let lhs = theta(e, &phi.oplus(psi)?)?;
    let tphi = theta(e, phi)?;
    let tpsi = theta(e, psi)?;
    let rhs = match (tphi, tpsi) {
        (Some(fs), Some(gs)) => {
            let mut combined = Vec::with_capacity(fs.len());
            let mut hit_basepoint = false;
            for (f, g) in fs.iter().zip(&gs) {
                let sum = f.oplus(g)?;
                if sum.is_basepoint() {
                    hit_basepoint = true;
                    break;
                }
                combined.push(sum);
            }
            if hit_basepoint {
                None
            } else {
                Some(combined)
            }
        }
        _ => None,
    };
    Ok(lhs == rhs)
}

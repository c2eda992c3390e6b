use std::fmt;

use exact_linalg::{rat_to_string, Rat, Space};
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::{Result, StepError};

/// A step function `[0,1] → Sub(ambient)` with weakly increasing values, in
/// normal form: positive step lengths summing to 1, adjacent values
/// distinct. Every function that fails to start at 0 or end at the ambient
/// space is the basepoint, stored canonically with no steps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StepFn {
    ambient: Space,
    steps: Vec<(Rat, Space)>,
    basepoint: bool,
}

impl StepFn {
    pub fn basepoint(ambient: Space) -> StepFn {
        StepFn {
            ambient,
            steps: Vec::new(),
            basepoint: true,
        }
    }

    /// Normal form of a raw step list. Lengths must be positive and sum to
    /// 1; values must be a weakly increasing chain inside `ambient`.
    pub fn new(ambient: Space, steps: Vec<(Rat, Space)>) -> Result<StepFn> {
        if steps.is_empty() {
            return Err(StepError::BadStep("empty step list".into()));
        }
        let mut total = Rat::zero();
        for (i, (len, value)) in steps.iter().enumerate() {
            if len <= &Rat::zero() {
                return Err(StepError::BadStep("non-positive step length".into()));
            }
            total += len;
            if !ambient.contains_space(value) {
                return Err(StepError::BadStep(
                    "step value not contained in the ambient space".into(),
                ));
            }
            if i > 0 && !value.contains_space(&steps[i - 1].1) {
                return Err(StepError::BadStep("values are not increasing".into()));
            }
        }
        if total != Rat::one() {
            return Err(StepError::BadStep("step lengths must sum to 1".into()));
        }
        let mut merged: Vec<(Rat, Space)> = Vec::with_capacity(steps.len());
        for (len, value) in steps {
            match merged.last_mut() {
                Some((l, v)) if *v == value => *l += len,
                _ => merged.push((len, value)),
            }
        }
        let starts_at_zero = merged.first().map(|(_, v)| v.is_zero()).unwrap_or(false);
        let ends_at_top = merged.last().map(|(_, v)| v == &ambient).unwrap_or(false);
        if !starts_at_zero || !ends_at_top {
            return Ok(StepFn::basepoint(ambient));
        }
        Ok(StepFn {
            ambient,
            steps: merged,
            basepoint: false,
        })
    }

    /// The constant-to-increasing two-step model of a full flag: one step
    /// per subspace, equal lengths.
    pub fn from_flag(ambient: Space, flag: &[Space]) -> Result<StepFn> {
        let n = flag.len();
        let len = Rat::new(1.into(), (n as i64).into());
        StepFn::new(
            ambient,
            flag.iter().map(|v| (len.clone(), v.clone())).collect(),
        )
    }

    pub fn ambient(&self) -> &Space {
        &self.ambient
    }

    pub fn is_basepoint(&self) -> bool {
        self.basepoint
    }

    pub fn steps(&self) -> &[(Rat, Space)] {
        &self.steps
    }

    /// Interior jump points (strictly between 0 and 1).
    pub fn cut_points(&self) -> Vec<Rat> {
        let mut cuts = Vec::new();
        let mut acc = Rat::zero();
        for (len, _) in self.steps.iter().take(self.steps.len().saturating_sub(1)) {
            acc += len;
            cuts.push(acc.clone());
        }
        cuts
    }

    /// Value at `t`, with steps half-open to the right (the final step is
    /// closed). Only meaningful away from the basepoint.
    pub fn value_at(&self, t: &Rat) -> &Space {
        debug_assert!(!self.basepoint);
        let mut acc = Rat::zero();
        for (i, (len, value)) in self.steps.iter().enumerate() {
            acc += len;
            if t < &acc || i + 1 == self.steps.len() {
                return value;
            }
        }
        unreachable!("step lengths sum to 1")
    }

    /// Raw steps of the restriction to the open interval `(a,b)`, rescaled
    /// to length 1. Values are untouched.
    pub(crate) fn restrict(&self, a: &Rat, b: &Rat) -> Vec<(Rat, Space)> {
        debug_assert!(a < b);
        let width = b - a;
        let mut out = Vec::new();
        let mut lo = Rat::zero();
        for (len, value) in &self.steps {
            let hi = &lo + len;
            let s = if &lo > a { lo.clone() } else { a.clone() };
            let e = if &hi < b { hi.clone() } else { b.clone() };
            if s < e {
                out.push(((&e - &s) / &width, value.clone()));
            }
            lo = hi;
        }
        out
    }

    /// Pointwise direct sum `(φ⊕ψ)(t) = φ(t) ⊕ ψ(t)` for orthogonal
    /// ambients; the basepoint absorbs.
    pub fn oplus(&self, other: &StepFn) -> Result<StepFn> {
        let orthogonal = self
            .ambient
            .basis()
            .iter()
            .all(|a| other.ambient.basis().iter().all(|b| a.dot(b).is_zero()));
        if !orthogonal {
            return Err(StepError::NotOrthogonal);
        }
        let ambient = self.ambient.sum(&other.ambient)?;
        if self.basepoint || other.basepoint {
            return Ok(StepFn::basepoint(ambient));
        }
        let mut steps = Vec::new();
        let (mut i, mut j) = (0usize, 0usize);
        let mut pos = Rat::zero();
        let (mut hi_a, mut hi_b) = (self.steps[0].0.clone(), other.steps[0].0.clone());
        loop {
            let next = if hi_a < hi_b { hi_a.clone() } else { hi_b.clone() };
            steps.push((
                &next - &pos,
                self.steps[i].1.sum(&other.steps[j].1)?,
            ));
            pos = next;
            if pos == hi_a && i + 1 < self.steps.len() {
                i += 1;
                hi_a += &self.steps[i].0;
            }
            if pos == hi_b && j + 1 < other.steps.len() {
                j += 1;
                hi_b += &other.steps[j].0;
            }
            if pos.is_one() {
                break;
            }
        }
        StepFn::new(ambient, steps)
    }
}

impl fmt::Display for StepFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basepoint {
            return write!(f, "*");
        }
        let mut acc = Rat::zero();
        for (i, (len, value)) in self.steps.iter().enumerate() {
            let lo = acc.clone();
            acc += len;
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "[{},{}]↦dim {}",
                rat_to_string(&lo),
                rat_to_string(&acc),
                value.rank()
            )?;
        }
        Ok(())
    }
}

impl Serialize for StepFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Step<'a> {
            length: String,
            value: &'a Space,
        }
        let mut st = s.serialize_struct("StepFn", 3)?;
        st.serialize_field("ambient", &self.ambient)?;
        let steps: Vec<Step> = self
            .steps
            .iter()
            .map(|(l, v)| Step {
                length: rat_to_string(l),
                value: v,
            })
            .collect();
        st.serialize_field("steps", &steps)?;
        st.serialize_field("basepoint", &self.basepoint)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::{rat_from_i64, Vector};

    fn r(n: i64, d: i64) -> Rat {
        rat_from_i64(n, d)
    }

    fn line(coords: &[i64]) -> Space {
        Space::line(&Vector::from_i64(coords)).unwrap()
    }

    #[test]
    fn normal_form_merges_and_flags() {
        let v = Space::full(1);
        let f = StepFn::new(
            v.clone(),
            vec![
                (r(1, 4), Space::zero(1)),
                (r(1, 4), Space::zero(1)),
                (r(1, 2), v.clone()),
            ],
        )
        .unwrap();
        assert_eq!(f.steps().len(), 2);
        assert_eq!(f.steps()[0].0, r(1, 2));
        assert!(!f.is_basepoint());
        // starting above 0 is the basepoint
        let g = StepFn::new(v.clone(), vec![(r(1, 1), v.clone())]).unwrap();
        assert!(g.is_basepoint());
        assert_eq!(g, StepFn::basepoint(v));
    }

    #[test]
    fn normal_form_is_idempotent() {
        let v = Space::full(2);
        let f = StepFn::new(
            v.clone(),
            vec![
                (r(1, 3), Space::zero(2)),
                (r(1, 3), line(&[1, 0])),
                (r(1, 3), v.clone()),
            ],
        )
        .unwrap();
        let again = StepFn::new(f.ambient().clone(), f.steps().to_vec()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn oplus_refines_cuts() {
        let u = line(&[1, 0]);
        let w = line(&[0, 1]);
        let f = StepFn::new(
            u.clone(),
            vec![(r(1, 3), Space::zero(2)), (r(2, 3), u.clone())],
        )
        .unwrap();
        let g = StepFn::new(
            w.clone(),
            vec![(r(1, 2), Space::zero(2)), (r(1, 2), w.clone())],
        )
        .unwrap();
        let fg = f.oplus(&g).unwrap();
        assert_eq!(fg.cut_points(), vec![r(1, 3), r(1, 2)]);
        assert_eq!(fg.steps()[1].1, u);
        assert_eq!(fg.steps()[2].1, Space::full(2));
        assert_eq!(fg, g.oplus(&f).unwrap());
    }

    #[test]
    fn oplus_rejects_overlapping_ambients() {
        let u = line(&[1, 1]);
        let f = StepFn::new(
            u.clone(),
            vec![(r(1, 2), Space::zero(2)), (r(1, 2), u.clone())],
        )
        .unwrap();
        assert!(matches!(f.oplus(&f), Err(StepError::NotOrthogonal)));
    }

    #[test]
    fn basepoint_absorbs() {
        let u = line(&[1, 0]);
        let w = line(&[0, 1]);
        let f = StepFn::basepoint(u);
        let g = StepFn::new(
            w.clone(),
            vec![(r(1, 2), Space::zero(2)), (r(1, 2), w)],
        )
        .unwrap();
        assert!(f.oplus(&g).unwrap().is_basepoint());
    }

    #[test]
    fn value_and_restrict() {
        let v = Space::full(2);
        let f = StepFn::new(
            v.clone(),
            vec![
                (r(1, 3), Space::zero(2)),
                (r(1, 3), line(&[1, 0])),
                (r(1, 3), v.clone()),
            ],
        )
        .unwrap();
        assert_eq!(f.value_at(&r(1, 2)), &line(&[1, 0]));
        assert_eq!(f.value_at(&r(1, 3)), &line(&[1, 0]));
        assert_eq!(f.value_at(&r(1, 1)), &v);
        let restricted = f.restrict(&r(0, 1), &r(1, 2));
        assert_eq!(
            restricted,
            vec![(r(2, 3), Space::zero(2)), (r(1, 3), line(&[1, 0]))]
        );
    }
}

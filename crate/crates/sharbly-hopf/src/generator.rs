use std::fmt;

use exact_linalg::{dual_tuple, LinAlgError, Space, Vector};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::Result;

/// A normalized basis tuple `[v_1, …, v_n]` spanning its ambient space:
/// every vector is primitive with positive leading coordinate and the list
/// is sorted. Negation signs stripped during normalization live in the
/// coefficient of the enclosing element, never here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    ambient: Space,
    vectors: Vec<Vector>,
}

impl Generator {
    /// The empty tuple, the generator of degree zero.
    pub fn empty(ambient_dim: usize) -> Generator {
        Generator {
            ambient: Space::zero(ambient_dim),
            vectors: Vec::new(),
        }
    }

    pub fn ambient(&self) -> &Space {
        &self.ambient
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Canonical form of a raw tuple. Dependent tuples are zero (`None`);
/// otherwise each vector is rescaled to its primitive representative, each
/// negation needed to make the leading coordinate positive contributes a
/// factor −1, and the list is sorted (reordering is free).
pub fn normalize(ambient_dim: usize, vectors: &[Vector]) -> Result<Option<(Generator, i64)>> {
    let span = Space::span(ambient_dim, vectors)?;
    if span.rank() != vectors.len() {
        return Ok(None);
    }
    let mut sign = 1i64;
    let mut vs: Vec<Vector> = vectors
        .iter()
        .map(|v| {
            let p = v.primitive();
            if p.leading_sign() < 0 {
                sign = -sign;
                p.neg()
            } else {
                p
            }
        })
        .collect();
    vs.sort();
    Ok(Some((
        Generator {
            ambient: span,
            vectors: vs,
        },
        sign,
    )))
}

/// Join of two generators with orthogonal spans: concatenate and normalize.
pub(crate) fn join(a: &Generator, b: &Generator) -> Result<(Generator, i64)> {
    let mut vs = a.vectors.clone();
    vs.extend(b.vectors.iter().cloned());
    normalize(a.ambient.ambient_dim(), &vs)?.ok_or_else(|| LinAlgError::Degenerate.into())
}

/// Dual tuple of a generator, normalized: the antipode on one term.
pub(crate) fn dualize(g: &Generator) -> Result<(Generator, i64)> {
    let duals = dual_tuple(&g.vectors)?;
    normalize(g.ambient.ambient_dim(), &duals)?.ok_or_else(|| LinAlgError::Degenerate.into())
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vectors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "]")
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Generator", 2)?;
        st.serialize_field("ambient", &self.ambient)?;
        st.serialize_field("vectors", &self.vectors)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vector {
        Vector::from_i64(c)
    }

    #[test]
    fn normalize_rescales_positively() {
        let (g, s) = normalize(2, &[v(&[0, 2]), v(&[3, 0])]).unwrap().unwrap();
        assert_eq!(s, 1);
        assert_eq!(g.vectors(), &[v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(g.ambient(), &Space::full(2));
    }

    #[test]
    fn normalize_counts_negations() {
        let (g, s) = normalize(2, &[v(&[-1, 0]), v(&[0, 1])]).unwrap().unwrap();
        assert_eq!(s, -1);
        assert_eq!(g.vectors(), &[v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn normalize_kills_dependent() {
        assert_eq!(normalize(2, &[v(&[1, 1]), v(&[2, 2])]).unwrap(), None);
    }

    #[test]
    fn dualize_empty_is_fixed() {
        let e = Generator::empty(3);
        assert_eq!(dualize(&e).unwrap(), (e, 1));
    }
}

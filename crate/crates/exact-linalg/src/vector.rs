use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::rat::{rat_to_string, Rat};
use crate::{LinAlgError, Result};

/// A vector in the ambient space `Q^N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    coords: Vec<Rat>,
}

impl Vector {
    pub fn new(coords: Vec<Rat>) -> Self {
        Vector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Vector::new(coords.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Vector::new(vec![Rat::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn check_dim(&self, ambient: usize) -> Result<()> {
        if self.dim() != ambient {
            return Err(LinAlgError::AmbientMismatch {
                expected: ambient,
                got: self.dim(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &Vector) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rat) -> Vector {
        Vector::new(self.coords.iter().map(|c| c * k).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector::new(self.coords.iter().map(|c| -c).collect())
    }

    /// Rescales by a positive rational so that the coordinates are integers
    /// with gcd 1. The zero vector is returned unchanged.
    pub fn primitive(&self) -> Vector {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::from(1);
        for c in &self.coords {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for v in &ints {
            gcd = gcd.gcd(v);
        }
        Vector::new(ints.into_iter().map(|v| Rat::from_integer(v / &gcd)).collect())
    }

    /// Sign of the first nonzero coordinate; 0 for the zero vector.
    pub fn leading_sign(&self) -> i32 {
        for c in &self.coords {
            if c.is_positive() {
                return 1;
            }
            if c.is_negative() {
                return -1;
            }
        }
        0
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", rat_to_string(c))?;
        }
        write!(f, ")")
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            seq.serialize_element(&rat_to_string(c))?;
        }
        seq.end()
    }
}

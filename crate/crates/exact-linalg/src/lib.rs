//! Exact rational linear algebra over a fixed ambient inner-product space.
//!
//! Everything here is computed over `Q` with arbitrary-precision rationals,
//! so subspace equality is decidable: a [`Space`] is stored in reduced
//! row-echelon canonical form and two spaces are equal iff their canonical
//! bases coincide. The inner product is always the standard dot product.

mod error;
mod matrix;
mod rat;
mod space;
mod tuple;
mod vector;

pub use error::LinAlgError;
pub use matrix::{invert_matrix, mat_vec, solve_columns};
pub use rat::{parse_rat, rat_from_i64, rat_to_string, Rat};
pub use space::Space;
pub use tuple::{dual_tuple, factorization_check, orientation_sign};
pub use vector::Vector;

pub type Result<T> = std::result::Result<T, LinAlgError>;

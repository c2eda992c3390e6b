//! Arbitrary-precision spherical geometry: regular spherical tetrahedra,
//! dihedral angles, Dehn tensors in (ℝ/πℚ) ⊗ (ℝ/πℚ), rationality reduction
//! by integer-relation detection, and the non-cocommutativity witness.

mod angle;
mod cocomm;
mod ctx;
mod error;
mod expr;
mod relation;
mod simplex;
mod tensor;

pub use angle::Angle;
pub use cocomm::{cocomm_test, CocommReport};
pub use ctx::{decimal, scaled_int, Ctx};
pub use error::DehnError;
pub use expr::parse_angle;
pub use relation::integer_relation;
pub use simplex::{
    dihedral, edge_length, regular_tetra, tetra_dihedral_formula, SphericalSimplex,
};
pub use tensor::{dehn_invariant, equal_mod_pi_q, is_pi_rational, reduce_tensor, DehnTensor};

pub type Result<T> = std::result::Result<T, DehnError>;

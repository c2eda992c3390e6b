//! The step-function model of the doubly-suspended building, the
//! little-intervals cut map, finite flag complexes with exact integer
//! homology, and the apartment cycles realizing the homology-level product
//! and coproduct formulas.

mod apartment;
mod complex;
mod error;
mod operad;
mod snf;
mod step;

pub use apartment::{
    apartment_cycle, chain_coproduct_check, chain_product_check, close_under_intersections,
    relation_boundary_check, subset_lattice,
};
pub use complex::{build_complex, Chain, Flag, FlagComplex};
pub use error::StepError;
pub use operad::{operad_compose, prod_coprod_check, theta, CutSystem};
pub use snf::{mat_mul, smith, solve_integer, torsion, Mat, Smith};
pub use step::StepFn;

pub type Result<T> = std::result::Result<T, StepError>;

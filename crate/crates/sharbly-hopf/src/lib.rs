//! The graded Hopf algebra of spherical polytopes over `Q`, presented by
//! normalized basis tuples.
//!
//! Elements live in free abelian groups on canonical tuple generators; the
//! subdivision relations are never quotiented. Identities that only hold
//! modulo those relations — most importantly the antipode identity
//! `μ(id⊗α)δ = ηε` — are certified geometrically instead: the algebraic
//! side is reduced termwise to a signed sum of cones, and a sampling oracle
//! checks that those cones decompose the ambient sphere.

mod checks;
mod cone;
mod element;
mod error;
mod generator;
pub mod rng;

pub use checks::{bialg_check, coassoc_check, counit_check, hopf_check, HopfReport};
pub use cone::{cover_check, cover_check_seq, locate, ConeWitness, CoverFailure, CoverReport,
    LocateResult};
pub use element::{Element, TensorElement};
pub use error::HopfError;
pub use generator::{normalize, Generator};

pub type Result<T> = std::result::Result<T, HopfError>;

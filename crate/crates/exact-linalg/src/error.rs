use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    AmbientMismatch { expected: usize, got: usize },

    #[error("subspace is not contained in the given space")]
    NotContained,

    #[error("degenerate input: vectors are linearly dependent")]
    Degenerate,

    #[error("invalid rational literal: {0}")]
    BadRational(String),
}

use exact_linalg::LinAlgError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("ambient spaces are not orthogonal")]
    NotOrthogonal,
    #[error("invalid step function: {0}")]
    BadStep(String),
    #[error("invalid cut system: {0}")]
    BadCut(String),
    #[error("lattice is missing its bottom or top element")]
    MissingBottomOrTop,
    #[error("chain supported on a cell absent from the complex")]
    MissingCell,
    #[error("chain is not a cycle")]
    NotACycle,
}

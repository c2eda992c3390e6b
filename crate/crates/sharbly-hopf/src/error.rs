use exact_linalg::LinAlgError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("gradings are not orthogonal")]
    NotOrthogonal,
    #[error("term grading does not match the element grading")]
    GradingMismatch,
    #[error("point lies outside the span of the tuple")]
    OutsideSpan,
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DehnError {
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("precision error: {0}")]
    Precision(String),
    #[error("parse error: {0}")]
    Parse(String),
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("class is not Serre: {0}")]
    NotSerre(String),

    #[error("BUG: theorem-guaranteed verification failed: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

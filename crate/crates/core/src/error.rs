use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("complex mismatch: {0}")]
    ComplexMismatch(String),
    #[error("boundary does not square to zero on `{0}`")]
    BoundaryNotNilpotent(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bound exhausted: {0}")]
    BoundExhausted(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not coassociative: {0}")]
    NotCoassociative(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

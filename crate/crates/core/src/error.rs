use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown point {0:?}")]
    UnknownPoint(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("operands live on different spaces")]
    SpaceMismatch,

    #[error("map is not monotone: {0}")]
    NotMonotone(String),

    #[error("set is not open (not upward closed): {0}")]
    NotOpen(String),

    #[error("invalid valuation table: {0}")]
    InvalidTable(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("instance is not pointed")]
    NotPointed,

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("malformed linear system: {0}")]
    Malformed(String),

    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

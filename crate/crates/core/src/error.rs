use thiserror::Error;

/// Errors produced by the library. Every variant is a domain error; callers
/// that need to distinguish usage mistakes do so before reaching this layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a group: {0}")]
    InvalidGroup(String),

    #[error("unsupported group family: {0}")]
    Unsupported(String),

    #[error("size ceiling exceeded: {0}")]
    TooLarge(String),

    #[error("invalid degree {degree}: {reason}")]
    Degree { degree: usize, reason: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("elements {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("cochain is not a cocycle: {0}")]
    NotCocycle(String),

    #[error("matrix has determinant {0}, expected 1")]
    Determinant(i64),

    #[error("missing amplitude for sector ({0}, {1})")]
    MissingSector(usize, usize),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid site data: {0}")]
    InvalidSite(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

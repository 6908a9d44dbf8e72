use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("invalid superalgebra: {0}")]
    InvalidAlgebra(String),
    #[error("not a super-ideal: {0}")]
    NotAnIdeal(String),
    #[error("ideal is not nilpotent within {0} steps")]
    NotNilpotent(usize),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("invalid Hopf structure: {0}")]
    InvalidHopf(String),
    #[error("invalid Lie superalgebra data: {0}")]
    InvalidLie(String),
    #[error("invalid group model: {0}")]
    InvalidGroup(String),
    #[error("invalid Harish-Chandra pair data: {0}")]
    InvalidPair(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("truncation exceeded: level {needed} requested, {available} available")]
    TruncationExceeded { needed: usize, available: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the numerical core and the text parsers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0}: {1}")]
    InvalidDimension(usize, &'static str),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is {0}, expected 1")]
    BadTrace(f64),

    #[error("not a valid state: minimum eigenvalue {0:e}")]
    NotPositive(f64),

    #[error("vectors are not orthonormal (max defect {0:e})")]
    NotOrthonormal(f64),

    #[error("non-finite value in input")]
    NonFinite,

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("argument {0} outside the domain of f")]
    OutOfDomain(f64),

    #[error("point ({0}, {1}) lies outside the face simplex")]
    OutsideFace(f64, f64),

    #[error("vector norm {0} exceeds the unit ball")]
    OutsideBall(f64),

    #[error("invalid outcome function: {0}")]
    InvalidFunction(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by validation and by the distance operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("singular denominator at outcome {index}: reference probability is 0 while the other is {other}")]
    SingularDenominator { index: usize, other: f64 },

    #[error("invalid pure state: {0}")]
    InvalidState(String),

    #[error("basis is not orthonormal: Gram matrix deviates from identity by {deviation:e}")]
    NonOrthonormalBasis { deviation: f64 },

    #[error("unsupported dimension {0}: only two-level systems are supported here")]
    UnsupportedDimension(usize),

    #[error("matrix is not Hermitian: max |A - A^H| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("expansion point {0} must lie strictly inside (0, 1)")]
    Singularity(f64),

    #[error("perturbation leaves the simplex: {0}")]
    OutsideSimplex(String),

    #[error("argument out of domain: {0}")]
    OutOfDomain(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid density profile: {0}")]
    InvalidProfile(String),

    #[error("bound violated: {0}")]
    BoundViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("quadrature eigen-solve did not converge for eigenvalue {index} after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },

    #[error("under-resolved: {0}")]
    UnderResolved(String),

    #[error("insufficient data: {usable} usable coefficients, at least {required} required")]
    InsufficientData { usable: usize, required: usize },

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("truncation mismatch: {0}")]
    TruncationMismatch(String),

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("derivative instability: extrapolation disagreement {disagreement:.3e} exceeds {tolerance:.1e}")]
    DerivativeInstability { disagreement: f64, tolerance: f64 },

    #[error("class violation: {0}")]
    ClassViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by measure, design, signal and transfer operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A point was not in the (discrete) support of a measure.
    #[error("point {point} is outside the support of {family}")]
    OutsideSupport { family: String, point: i64 },

    /// A polynomial degree beyond what the family provides.
    #[error("degree {degree} exceeds maximum degree {max} of {family}")]
    DegreeTooHigh {
        family: String,
        degree: usize,
        max: usize,
    },

    /// A parameter combination that does not define a valid operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A parameter combination that does not define a valid filter design.
    #[error("invalid design: {0}")]
    InvalidDesign(String),

    /// Malformed or inconsistent input data (signals, sample vectors, files).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Failure while parsing a kernel or signal file.
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// An internal consistency check failed; indicates a bug.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

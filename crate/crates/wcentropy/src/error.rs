//! Crate-wide error type.

use thiserror::Error;

/// Error raised by estimators, evaluators, and the CLI plumbing.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain (negative lifetime, x < 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid construction or configuration parameter.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Malformed input data with its location.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A semi-infinite integral failed to stabilize across doublings of the
    /// truncation point, or overflowed outright.
    #[error("integral diverges: {0}")]
    Divergent(String),

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// Weight function rejected by the integrability gate.
    #[error("weight function fails the integrability condition: {0}")]
    Integrability(String),

    /// Two independent evaluation routes disagreed beyond tolerance.
    #[error("numerical self-check failed: {0}")]
    SelfCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by the einstab algorithms.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An input parameter lies outside the documented range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Input data violates a structural requirement (orthogonality, closure, ...).
    #[error("consistency error: {0}")]
    Consistency(String),

    /// An iterative solver did not reach its tolerance.
    #[error("solver failure after {iterations} iterations: {message}")]
    SolverFailure {
        message: String,
        iterations: usize,
        last_iterate: Vec<f64>,
    },

    /// A quantity that must be non-negative (a square, a length) came out negative.
    #[error("numerical domain error: {0}")]
    NumericalDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parameter(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub(crate) fn consistency(msg: impl Into<String>) -> Error {
    Error::Consistency(msg.into())
}

//! Error type shared across the library.

use thiserror::Error;

/// Errors produced by library operations.
///
/// `Domain` covers parameter/argument validation; `NotPositiveDefinite`
/// reports a failed Cholesky pivot without any silent regularization;
/// `Internal` flags violated invariants that indicate a bug rather than bad
/// input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter or argument lies outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An input array has the wrong length or an index is out of range.
    #[error("shape error: {0}")]
    Shape(String),

    /// Factorization hit a non-positive pivot; the matrix is not (numerically)
    /// positive definite.
    #[error("matrix not positive definite: pivot {index} has value {value:e}")]
    NotPositiveDefinite { index: usize, value: f64 },

    /// Too few data points for the requested statistic.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Convenience constructor for domain errors.
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Convenience constructor for shape errors.
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}

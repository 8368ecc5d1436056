//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A phase or cascade cannot be represented at the configured mantissa width.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// Adaptive quadrature could not meet the requested tolerance.
    #[error("quadrature failure: requested {requested:e}, achieved {achieved:e}")]
    QuadratureFailure { requested: f64, achieved: f64 },

    /// Renormalization cascade exceeded the configured depth limit.
    #[error("cascade depth limit {0} exceeded")]
    DepthLimit(usize),

    /// Integer range exceeded while locating N bounds.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Grid too coarse to resolve the density plateau of width `a`.
    #[error("resolution too coarse: {0}")]
    ResolutionTooCoarse(String),

    /// Box-family parameter M outside the admissible range.
    #[error("M out of range: {0}")]
    MOutOfRange(String),

    /// Truncated operator series could not reach the tolerance.
    #[error("series truncation insufficient: {0}")]
    SeriesTruncation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code contract: 0 ok, 2 domain, 3 precision/tolerance, 4 io.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::MOutOfRange(_) => 2,
            Error::Io(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

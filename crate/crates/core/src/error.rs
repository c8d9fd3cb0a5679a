use thiserror::Error;

/// Errors produced by the numerics in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter {name} = {value} must be strictly positive")]
    NonPositiveParameter { name: String, value: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms (last |term| = {last_term:e})")]
    NonConvergence { terms: usize, last_term: f64 },

    #[error("quadrature did not reach tolerance {tol:e} (achieved {achieved:e})")]
    QuadratureFailure { tol: f64, achieved: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("operation requires an even or odd state")]
    ParityRequired,

    #[error("degenerate state: {0}")]
    Degenerate(String),

    #[error("states were built from different parameter sets")]
    MismatchedParams,

    #[error("unsupported (p, q) = ({p}, {q}): only (0,0), (0,1), (1,0), (1,1), (2,1) have closed-form weights; the generic Meijer-G weight is not evaluated")]
    UnsupportedCase { p: usize, q: usize },

    #[error("parameter range violation: {0}")]
    ParameterRange(String),

    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    /// Coarse classification used by front ends to pick exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NonPositiveParameter { .. }
            | Error::UnsupportedCase { .. }
            | Error::ParameterRange(_)
            | Error::ParityRequired
            | Error::MismatchedParams => ErrorKind::Config,
            Error::Domain(_) | Error::Overflow(_) | Error::Degenerate(_) => ErrorKind::Domain,
            Error::NonConvergence { .. }
            | Error::QuadratureFailure { .. }
            | Error::Truncation(_)
            | Error::Consistency(_) => ErrorKind::Convergence,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ErrorKind {
    Config,
    Domain,
    Convergence,
}

pub type Result<T> = std::result::Result<T, Error>;

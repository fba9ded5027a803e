use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// A terminating hypergeometric sum hit a vanishing denominator `(c)_k`
    /// while its numerator was still nonzero.
    #[error("pole in terminating 2F1: (c)_k vanishes at k = {k} with nonzero numerator")]
    Pole { k: usize },

    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("non-finite integrand at quadrature node {index} (x = {node})")]
    NonFiniteIntegrand { index: usize, node: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{what} failed to converge")]
    Convergence { what: &'static str },

    #[error("invalid bracket [{lo}, {hi}]: {reason}")]
    InvalidBracket { lo: f64, hi: f64, reason: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { op, reason: reason.into() }
    }
}

//! Error type shared by every solver in the crate.

use thiserror::Error;

/// Coarse grouping of errors, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Bad input parameters or malformed data.
    Input,
    /// An iterative method ran out of iterations.
    NonConvergence,
    /// A model domain restriction or assumption is violated.
    Domain,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi} do not change sign")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("{what} did not converge after {iterations} iterations (last error {last_error:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        last_error: f64,
    },

    #[error("transition solver stopped with equilibrium error {error:e}")]
    TransitionNoConvergence {
        error: f64,
        best: Box<crate::closed_economy::EquilibriumPath>,
    },

    #[error("unsupported quadrature order {0}")]
    UnsupportedOrder(usize),

    #[error("too few tail samples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("degenerate sample: {0}")]
    DegenerateSample(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate productivity distribution: {0}")]
    DegenerateDistribution(&'static str),

    #[error("assumption violated: {0}")]
    AssumptionViolation(String),

    #[error("no steady state: {0}")]
    NoSteadyState(String),

    #[error("leverage {lambda} is at the threshold {lambda_bar}; neither regime exists")]
    AtThreshold { lambda: f64, lambda_bar: f64 },

    #[error("series too short: {len} observations, need at least {min}")]
    SeriesTooShort { len: usize, min: usize },

    #[error("fundamental value tail not summable: rent growth {growth} >= rate {rate}")]
    TailNotSummable { growth: f64, rate: f64 },

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::NoConvergence { .. } | Error::TransitionNoConvergence { .. } => {
                ErrorCategory::NonConvergence
            }
            Error::UnsupportedOrder(_)
            | Error::TooFewSamples { .. }
            | Error::SeriesTooShort { .. }
            | Error::Parameter(_) => ErrorCategory::Input,
            _ => ErrorCategory::Domain,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Failures raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: pole at {x}")]
    Pole { op: &'static str, x: f64 },

    #[error("{op}: domain error: {msg}")]
    Domain { op: &'static str, msg: String },

    #[error("{op}: no convergence after {terms} terms")]
    Convergence { op: &'static str, terms: usize },

    #[error("{op}: unsupported parameter regime: {msg}")]
    Unsupported { op: &'static str, msg: String },

    #[error("{op}: result overflows double precision (log magnitude {log_abs})")]
    Overflow { op: &'static str, log_abs: f64 },

    #[error("quadrature: panel budget of {budget} exhausted (error estimate {err:e})")]
    PanelBudget { budget: usize, err: f64 },

    #[error("quadrature: no truncation point found below {cap}")]
    Truncation { cap: f64 },

    #[error("{op}: finite-difference step ill-conditioned at z = {z}")]
    Step { op: &'static str, z: f64 },

    #[error("invalid mode: {0}")]
    InvalidMode(String),

    #[error("fit degenerate: {0}")]
    FitDegenerate(String),

    #[error("synthesis tail bound {bound:e} exceeds tolerance {tolerance:e}")]
    TailTooLarge { bound: f64, tolerance: f64 },

    #[error("inconsistent boundary data: {0}")]
    Inconsistent(String),

    #[error("slope undetermined: supply a flux normalization")]
    NormalizationMissing,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain { op, msg: msg.into() }
}

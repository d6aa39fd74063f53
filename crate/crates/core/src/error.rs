use thiserror::Error;

/// Errors raised by the numerical kernels and the model layers built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument out of domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("{function}: lower parameter {value} is a pole")]
    Pole { function: &'static str, value: f64 },

    /// An iterative method ran out of budget. The best estimate reached so far
    /// is carried along so callers can decide whether it is usable.
    #[error("{what} did not converge (best estimate {estimate:e}, error estimate {error_estimate:e})")]
    NonConvergence {
        what: &'static str,
        estimate: f64,
        error_estimate: f64,
    },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("strategy {strategy} is not available: {reason}")]
    StrategyUnavailable {
        strategy: &'static str,
        reason: String,
    },

    #[error("{model} does not support {operation}")]
    Unsupported {
        model: &'static str,
        operation: &'static str,
    },

    #[error("empty input")]
    EmptyInput,

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("every fit failed: {0}")]
    AllFitsFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}

pub(crate) fn check_param(
    name: &'static str,
    value: f64,
    ok: bool,
    reason: &'static str,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason,
        })
    }
}

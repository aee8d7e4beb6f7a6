use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HardyError {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error(
        "quadrature did not converge: best value {value:e} with error estimate {error_estimate:e} after {evaluations} evaluations"
    )]
    NoConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("invalid grid function: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = HardyError> = std::result::Result<T, E>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> HardyError {
    HardyError::Domain {
        op,
        detail: detail.into(),
    }
}

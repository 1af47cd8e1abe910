use thiserror::Error;

/// Errors raised by the solvers and numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested quantity is not defined on this branch of parameter space.
    #[error("branch error: {0}")]
    Branch(String),
    /// A root finder was handed a bracket without a sign change.
    #[error("no sign change in bracket [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },
    /// An iterative method failed to converge or produced an invalid state.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// Unsupported configuration, e.g. a quadrature order without a rule.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

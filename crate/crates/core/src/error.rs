use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured memory or enumeration cap would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// The adaptive integrator ran out of evaluations. Carries the partial result.
    #[error(
        "quadrature did not converge after {evaluations} evaluations \
         (partial value {value:e}, error estimate {abs_error:e})"
    )]
    Convergence {
        value: f64,
        abs_error: f64,
        evaluations: usize,
    },

    /// A hypothesis required by a check does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical anomaly: {0}")]
    NumericalAnomaly(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("prime cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

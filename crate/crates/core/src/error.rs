use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("constant polynomial")]
    ConstantPolynomial,

    #[error("degenerate: {0}")]
    Degenerate(String),

    /// The arguments fall outside the domain of the requested problem.
    #[error("{0}")]
    Domain(String),

    #[error("undefined angle: vertex coincides with an endpoint")]
    UndefinedAngle,

    #[error("collinear configuration: {0}")]
    Collinear(String),

    /// A guarantee that holds mathematically did not hold numerically.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

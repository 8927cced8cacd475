use thiserror::Error;

/// Errors raised by evaluators, oracles and the zero engine.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("argument outside the supported domain: {0}")]
    Domain(String),
    #[error("evaluation at a pole: {0}")]
    Pole(String),
    #[error("series or iteration did not converge: {0}")]
    Convergence(String),
    #[error("precision loss: {0}")]
    Precision(String),
    #[error("support of the unit average escaped the summation window: {0}")]
    SupportEscape(String),
    #[error("zero or pole on the contour: {0}")]
    BoundaryZero(String),
    #[error("winding number is not an integer: {0}")]
    NonInteger(String),
    #[error("root polishing failed: {0}")]
    RootPolish(String),
    #[error("sign-change count disagrees with the degree: {0}")]
    Certification(String),
    #[error("zero not certified: {0}")]
    Uncertified(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

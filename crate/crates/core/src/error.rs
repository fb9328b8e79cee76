use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    GammaPole(String),

    #[error("invalid hypergeometric parameter c = {0}: must not be zero or a negative integer")]
    InvalidC(String),

    #[error("hypergeometric series did not converge after {terms} terms")]
    ConvergenceFailure { terms: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid boundary function: {0}")]
    InvalidBoundary(String),

    #[error("derivative order k + l = {0} exceeds the supported maximum of 4")]
    OrderTooHigh(u32),

    #[error("radius {0} exceeds the evaluation cap 0.999")]
    RadiusTooLarge(String),

    #[error("non-finite result: {0}")]
    NonFinite(String),
}

impl Error {
    /// True for errors caused by bad input, as opposed to numerical failure.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::ConvergenceFailure { .. } | Error::NonFinite(_) | Error::GammaPole(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

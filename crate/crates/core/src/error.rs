use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A structural identity that must hold by construction failed; this is
    /// an internal consistency bug, never a property of the input.
    #[error("commutation failure: {0}")]
    CommutationFailure(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

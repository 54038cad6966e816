use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A value lies outside the mathematical domain of the operation,
    /// e.g. a nonpositive utility handed to the welfare function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structurally invalid argument, e.g. a quota larger than the
    /// population.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An internal invariant was violated. Indicates a bug.
    #[error("internal consistency violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the algebraic and numerical routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A coefficient outside the tracked truncation window was requested.
    #[error("coefficient at exponent {exponent} lies outside the known window (known through local order {known})")]
    OutOfWindow { exponent: i64, known: i64 },
    #[error("series expanded at different points cannot be combined")]
    PointMismatch,
    #[error("leading coefficient is not invertible")]
    NotInvertible,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Input outside the supported mathematical domain (e.g. |w| >= 1, x <= 0).
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation that must hold exactly did not.
    #[error("mathematical inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Process exit code for this error: 1 for usage/domain problems, 2 for inconsistencies.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Inconsistent(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a function.
    #[error("domain error in {function}: {detail}")]
    Domain { function: &'static str, detail: String },

    /// Parameter text could not be parsed.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// The requested evaluation does not fit the exponent budget.
    #[error("precision error: {0}")]
    Precision(String),

    /// `log|J_N|` is undefined because the sum vanished.
    #[error("undefined growth: J_N evaluated to zero at N = {n}")]
    UndefinedGrowth { n: u64 },

    /// An operation was invoked outside the parameter regime it applies to.
    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    /// Structurally invalid input (zero N, non-increasing lists, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the engine.
///
/// Mathematically negative outcomes (a rigid word, a failed certificate
/// check) are not errors; they are reported through the result types.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller violated an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),

    /// Source text could not be parsed.
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A configured budget (sign patterns, shrink steps) was exhausted.
    #[error("resource limit: {0}")]
    Resource(String),

    /// No separating element could be built in the requested window.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// The input was rejected by a solver, with a diagnostic.
    #[error("rejected: {0}")]
    Rejected(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Error taxonomy shared by every module; the CLI maps the variants onto
/// process exit codes (argument -> 2, resource -> 3, numeric -> 4).
#[derive(Debug, Error)]
pub enum CoreError {
    /// A precondition on user-supplied parameters failed.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The request exceeds a configured memory or work budget.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    /// A numerical procedure failed to converge or lost all accuracy.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// Required precomputed state (e.g. prime coverage) is missing.
    #[error("missing state: {0}")]
    State(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CoreError {
    /// Process exit code the CLI reports for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            CoreError::Argument(_) => 2,
            CoreError::Resource(_) => 3,
            CoreError::Numeric(_) => 4,
            CoreError::State(_) => 2,
            CoreError::Io(_) => 1,
        }
    }
}

use std::fmt;

/// Errors that stop a command before any check runs. They exit with
/// status 2; failed checks exit with status 1.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("ParseError({line}): {message}")]
    Parse { line: usize, message: String },
    #[error("UnknownEntity({0})")]
    UnknownEntity(String),
    #[error("BudgetExceeded({0})")]
    BudgetExceeded(String),
    #[error("invalid {kind} {name}: {message}")]
    Invalid { kind: &'static str, name: String, message: String },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn invalid(kind: &'static str, name: &str, message: impl fmt::Display) -> Self {
        CliError::Invalid { kind, name: name.to_string(), message: message.to_string() }
    }

    pub fn usage(message: impl fmt::Display) -> Self {
        CliError::Usage(message.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

use std::fmt;

use maslov_core::ErrorClass;

/// An error with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub const DOMAIN: i32 = 2;
    pub const AMBIGUITY: i32 = 3;

    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: Self::DOMAIN,
            message: message.into(),
        }
    }

    pub fn context(self, what: &str) -> Self {
        CliError {
            message: format!("{what}: {}", self.message),
            ..self
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<maslov_core::Error> for CliError {
    fn from(e: maslov_core::Error) -> Self {
        let code = match e.class() {
            ErrorClass::Domain => Self::DOMAIN,
            ErrorClass::Ambiguity => Self::AMBIGUITY,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

use std::fmt;

use padelin_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self { code: EXIT_INVALID, message: message.into() }
    }

    pub fn falsified(message: impl Into<String>) -> Self {
        Self { code: EXIT_FALSIFIED, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_)
            | Error::InvalidParameter(_)
            | Error::Parse(_)
            | Error::DivisionByZero(_)
            | Error::IndeterminateTeichmuller => EXIT_INVALID,
            Error::PrecisionExhausted(_) | Error::Consistency(_) | Error::FactorizationMismatch(_) => {
                EXIT_FALSIFIED
            }
        };
        Self { code, message: e.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

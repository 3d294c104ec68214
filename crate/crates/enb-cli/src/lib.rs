//! IO, serialization and command execution for the `enb` binary.
//!
//! The algorithmic core lives in `enb-core`; this crate adds the JSON
//! document formats (parameter bundles double as replay overrides), the
//! plain-text table renderer, the CSV sweep, and exit-code policy.

pub mod formats;
pub mod run;
pub mod table;

/// Exit codes: 0 success, 1 usage or input error, 2 search exhausted,
/// 3 internal consistency failure.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError { code: 1, message: message.into() }
    }
}

impl From<enb_core::Error> for CliError {
    fn from(e: enb_core::Error) -> CliError {
        let code = match &e {
            enb_core::Error::ParameterSearchExhausted => 2,
            enb_core::Error::Consistency(_) => 3,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

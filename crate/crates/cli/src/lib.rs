//! Front end for `vdw-core`: configuration parsing, sweeps and CSV output.

pub mod config;
pub mod run;
pub mod selftest;

use vdw_core::VdwError;

pub use config::{parse_config, Command, RunConfig, SceneKind};
pub use run::{run, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {key}: {message}")]
    Config { line: usize, key: String, message: String },

    #[error(transparent)]
    Kernel(#[from] VdwError),

    #[error("{0}")]
    Internal(String),
}

impl CliError {
    /// 1 for bad input, 2 for numerical failure, 3 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 1,
            CliError::Kernel(e) if e.is_numerical() => 2,
            CliError::Kernel(_) => 1,
            CliError::Internal(_) => 3,
        }
    }

    /// One-line `key=value` record for the diagnostic stream.
    pub fn record(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        match self {
            CliError::Config { line, key, message } => {
                format!("error kind=config line={line} key={} message={}", quote(key), quote(message))
            }
            CliError::Kernel(e) => {
                let kind = if e.is_numerical() { "numeric" } else { "domain" };
                format!("error kind={kind} message={}", quote(&e.to_string()))
            }
            CliError::Internal(m) => format!("error kind=internal message={}", quote(m)),
        }
    }
}

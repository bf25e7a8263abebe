//! Input formats, JSON renderings and command pipelines for the `mvsheaf`
//! binary.

pub mod commands;
pub mod input;
pub mod render;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input or flags; exit status 2.
    #[error("usage: {0}")]
    Usage(String),
    /// Well-formed input violating a precondition; exit status 1.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

/// Exit status for a finished report: 1 when it carries `"ok": false`.
pub fn report_status(report: &serde_json::Value) -> i32 {
    match report.get("ok") {
        Some(serde_json::Value::Bool(false)) => 1,
        _ => 0,
    }
}

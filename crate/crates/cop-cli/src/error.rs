//! Failures of the command-line front end and their exit codes.

use cop_core::CopError;
use serde_json::{json, Value};
use thiserror::Error;

/// Every way a command can fail.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("invalid JSON input: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid value {value:?} for {name}")]
    Env { name: &'static str, value: String },
    #[error(transparent)]
    Domain(#[from] CopError),
}

impl CliError {
    /// `2` for domain errors, `1` for I/O, parse and configuration errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            _ => 1,
        }
    }

    /// Machine-readable body `{"error": {code, which, index, detail}}` for domain errors.
    pub fn domain_report(&self) -> Option<Value> {
        let CliError::Domain(e) = self else { return None };
        let mut body = json!({ "code": e.code(), "detail": e.to_string() });
        if let CopError::RegularityViolation { which, .. } = e {
            body["which"] = json!(which.tag());
        }
        if let Some(index) = e.index() {
            body["index"] = json!(index);
        }
        Some(json!({ "error": body }))
    }
}

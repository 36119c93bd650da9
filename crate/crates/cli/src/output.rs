//! Versioned JSON envelope shared by every subcommand.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    /// The command line, without the program name.
    pub command: Vec<String>,
    pub ok: bool,
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl OutputRecord {
    pub fn new(command: Vec<String>, ok: bool, result: serde_json::Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            ok,
            result,
            elapsed_ms: None,
        }
    }
}

/// Approximate rendering of an exact value, for `--float`.
pub fn approx(value: &hilbgw::Rational) -> Option<f64> {
    num_traits::ToPrimitive::to_f64(value)
}

//! Structured reports: a schema-versioned JSON envelope around the
//! per-command results, deterministic for identical inputs apart from
//! timings.

use serde::Serialize;
use serde_json::Value;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: &'static str,
    /// The invoked command line, echoed.
    pub command: String,
    /// FNV-1a hash of the input file bytes, hex; empty when no file.
    pub input_hash: String,
    pub results: Value,
    pub timings_ms: f64,
    pub pass: bool,
}

impl Report {
    pub fn new(command: String, input_hash: String, results: Value, timings_ms: f64, pass: bool) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            input_hash,
            results,
            timings_ms,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

pub fn hash_bytes(bytes: &[u8]) -> String {
    let mut h = crate::braid::Fnv::new();
    h.write(bytes);
    format!("{:016x}", h.finish())
}

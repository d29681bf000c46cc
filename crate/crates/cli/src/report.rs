use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Counters {
    pub nodes_expanded: u64,
    pub elapsed_ms: u64,
}

/// The one JSON document every invocation emits.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: Vec<String>,
    pub params: Value,
    pub outcome: String,
    pub witness: Option<Value>,
    pub counters: Counters,
    pub seeds: Vec<u64>,
    /// Hex fingerprint of the input graph, when there is one.
    pub fingerprint: Option<String>,
    /// Command-specific extras.
    pub details: Value,
}

impl Report {
    pub fn new(command: Vec<String>, params: Value, outcome: impl Into<String>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            params,
            outcome: outcome.into(),
            witness: None,
            counters: Counters::default(),
            seeds: Vec::new(),
            fingerprint: None,
            details: Value::Null,
        }
    }
}

pub fn hex_fingerprint(fp: u64) -> String {
    format!("{fp:016x}")
}

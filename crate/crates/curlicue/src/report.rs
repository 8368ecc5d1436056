//! Machine-readable run reports: every CLI invocation emits one JSON
//! envelope with the configuration, seed and outputs, reproducible
//! byte-for-byte from the same seed (timing fields excepted: wall times in
//! `bench` outputs are inherently non-deterministic).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub seed: Option<u64>,
    pub config: Value,
    pub outputs: Value,
}

impl RunReport {
    pub fn new(command: &str, seed: Option<u64>, config: Value, outputs: Value) -> RunReport {
        RunReport {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config,
            outputs,
        }
    }

    /// Pretty JSON with sorted object keys (serde_json maps are ordered),
    /// hence deterministic for identical inputs.
    pub fn emit(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self).map_err(std::io::Error::other)?)
    }

    pub fn parse(text: &str) -> Result<RunReport> {
        Ok(serde_json::from_str(text).map_err(std::io::Error::other)?)
    }
}

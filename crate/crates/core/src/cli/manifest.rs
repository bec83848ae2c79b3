//! Run manifest: written alongside every output so a result can be
//! reproduced from the manifest alone.

use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Fully resolved configuration, defaults materialized, keys mirroring
    /// the command-line flags.
    pub config: serde_json::Value,
    pub seed: u64,
    pub artifacts: Vec<String>,
    pub version: String,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value, seed: u64, artifacts: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            config,
            seed,
            artifacts: artifacts.iter().map(|s| s.to_string()).collect(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Writes `manifest.json` into `dir` (pretty-printed, LF line endings).
    pub fn write(&self, dir: &Path) -> io::Result<()> {
        let body = serde_json::to_string_pretty(self).expect("manifest serializes");
        fs::write(dir.join("manifest.json"), body + "\n")
    }
}

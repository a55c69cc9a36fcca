//! Run manifests: written before computation starts, finalized after.

use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub seed: u64,
    pub tool_version: String,
    pub started_unix_ms: u128,
    /// None while the run is in flight.
    pub finished_unix_ms: Option<u128>,
    pub outputs: Vec<String>,
}

fn now_ms() -> u128 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

impl RunManifest {
    pub fn start(
        command: &str,
        config: serde_json::Value,
        seed: u64,
        outputs: &[&Path],
    ) -> RunManifest {
        RunManifest {
            command: command.to_string(),
            config,
            seed,
            tool_version: buckleopt::VERSION.to_string(),
            started_unix_ms: now_ms(),
            finished_unix_ms: None,
            outputs: outputs
                .iter()
                .map(|p| p.display().to_string())
                .collect(),
        }
    }

    pub fn finish(&mut self) {
        self.finished_unix_ms = Some(now_ms());
    }

    pub fn write(&self, path: &Path) -> Result<(), String> {
        let json = serde_json::to_string_pretty(self).expect("manifest serializes");
        crate::write_text(path, &json)
    }
}

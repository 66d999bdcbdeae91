//! Run manifests: every command writes a `manifest.json` next to its
//! outputs recording the resolved configuration, the seeds, and the exact
//! argv, so any run can be replayed bitwise on the same build.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub version: &'static str,
    pub argv: Vec<String>,
    /// Fully resolved configuration after defaults, so the manifest stands
    /// alone even when flags were omitted.
    pub config: serde_json::Value,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub rng_seeds: Vec<u64>,
    pub duration_seconds: f64,
}

impl RunManifest {
    pub fn new(command: &'static str, config: serde_json::Value) -> Self {
        Self {
            command,
            version: env!("CARGO_PKG_VERSION"),
            argv: std::env::args().collect(),
            config,
            inputs: Vec::new(),
            outputs: Vec::new(),
            rng_seeds: Vec::new(),
            duration_seconds: 0.0,
        }
    }

    pub fn input(mut self, path: &Path) -> Self {
        self.inputs.push(path.display().to_string());
        self
    }

    pub fn output(mut self, path: &Path) -> Self {
        self.outputs.push(path.display().to_string());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.rng_seeds.push(seed);
        self
    }

    /// Stamps the duration and writes `manifest.json` into `dir`.
    pub fn write(mut self, dir: &Path, started: Instant) -> Result<()> {
        self.duration_seconds = started.elapsed().as_secs_f64();
        let path = dir.join("manifest.json");
        let json = serde_json::to_string_pretty(&self)?;
        std::fs::write(&path, json + "\n")?;
        Ok(())
    }
}

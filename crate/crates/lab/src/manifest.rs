//! JSON run manifest: resolved parameters, library version, wall time,
//! and checksums of every output file.

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Serialize)]
pub struct OutputRecord {
    pub file: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct Manifest {
    pub recipe: String,
    pub params: BTreeMap<String, String>,
    pub library_version: String,
    pub wall_time_seconds: f64,
    pub outputs: Vec<OutputRecord>,
    /// Free-form scalar results (estimates, drifts, ...).
    pub results: BTreeMap<String, f64>,
}

pub struct ManifestBuilder {
    recipe: String,
    params: BTreeMap<String, String>,
    started: Instant,
    outputs: Vec<OutputRecord>,
    results: BTreeMap<String, f64>,
}

impl ManifestBuilder {
    pub fn new(recipe: &str, params: &crate::params::Params) -> Self {
        ManifestBuilder {
            recipe: recipe.to_string(),
            params: params
                .iter()
                .map(|(k, v)| (k.clone(), v.render()))
                .collect(),
            started: Instant::now(),
            outputs: Vec::new(),
            results: BTreeMap::new(),
        }
    }

    pub fn record_output(&mut self, path: &Path) -> Result<()> {
        let data = std::fs::read(path).with_context(|| format!("hashing {}", path.display()))?;
        let mut hasher = Sha256::new();
        hasher.update(&data);
        self.outputs.push(OutputRecord {
            file: path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
            bytes: data.len() as u64,
            sha256: format!("{:x}", hasher.finalize()),
        });
        Ok(())
    }

    pub fn record_result(&mut self, key: &str, value: f64) {
        self.results.insert(key.to_string(), value);
    }

    pub fn write(self, dir: &Path) -> Result<PathBuf> {
        let manifest = Manifest {
            recipe: self.recipe,
            params: self.params,
            library_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
            outputs: self.outputs,
            results: self.results,
        };
        let path = dir.join("manifest.json");
        let text = serde_json::to_string_pretty(&manifest)?;
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}

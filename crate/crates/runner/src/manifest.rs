//! Run manifest: configuration hash, timings, outputs and the seed ledger.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::error::RunError;

pub const MANIFEST_FILE: &str = "manifest.json";

/// Version string recorded in every manifest.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub name: String,
    /// `run` when the stage wrote its outputs, `replayed` when it was
    /// recomputed or reloaded only to feed a later stage.
    pub status: String,
    pub seconds: f64,
    pub outputs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedEntry {
    pub stage: String,
    pub index: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub recovery_q: f64,
    pub estimate_error_covariance: f64,
    pub estimate_error_relation: f64,
    pub recovery_error_covariance: f64,
    pub recovery_error_relation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config_hash: String,
    pub code_version: String,
    pub root_seed: u64,
    /// `running`, `complete` or `failed`.
    pub status: String,
    pub failed_stage: Option<String>,
    pub error: Option<String>,
    pub stages: Vec<StageRecord>,
    pub seed_ledger: Vec<SeedEntry>,
    pub summary: Option<RunSummary>,
    /// SHA-256 of every output file except the manifest, keyed by relative path.
    pub output_hashes: BTreeMap<String, String>,
}

/// Hash of the configuration with the output location removed, so the same
/// experiment written to two places hashes identically.
pub fn config_hash(config: &ExperimentConfig) -> String {
    let mut c = config.clone();
    c.run.output = Default::default();
    let canonical = serde_json::to_string(&c).expect("configuration serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

pub fn file_hash(path: &Path) -> Result<String, RunError> {
    let bytes = std::fs::read(path)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

impl RunManifest {
    pub fn new(config: &ExperimentConfig) -> Self {
        Self {
            config_hash: config_hash(config),
            code_version: CODE_VERSION.to_string(),
            root_seed: config.run.seed,
            status: "running".into(),
            failed_stage: None,
            error: None,
            stages: Vec::new(),
            seed_ledger: Vec::new(),
            summary: None,
            output_hashes: BTreeMap::new(),
        }
    }

    pub fn save(&self, dir: &Path) -> Result<(), RunError> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(dir.join(MANIFEST_FILE), text)?;
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(dir.join(MANIFEST_FILE))?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Hashes every regular file under `dir` except the manifest.
    pub fn hash_outputs(&mut self, dir: &Path) -> Result<(), RunError> {
        fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<String, String>) -> Result<(), RunError> {
            for entry in std::fs::read_dir(dir)? {
                let path = entry?.path();
                if path.is_dir() {
                    walk(root, &path, out)?;
                } else {
                    let rel = path.strip_prefix(root).expect("under root").to_string_lossy().replace('\\', "/");
                    if rel != MANIFEST_FILE {
                        out.insert(rel, file_hash(&path)?);
                    }
                }
            }
            Ok(())
        }
        self.output_hashes.clear();
        walk(dir, dir, &mut self.output_hashes)
    }
}

//! Reproducibility record written next to the pipeline artifacts.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverRecord {
    pub m: usize,
    pub coupling: f64,
    pub nodes_per_wavelength: f64,
    pub condition_estimate: f64,
    pub min_pivot_ratio: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InversionRecord {
    pub delta: f64,
    pub largest_eigenvalue: f64,
    pub clamped_eigenvalues: usize,
    pub morozov_fallbacks: usize,
    pub indicator_min: f64,
    pub indicator_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub core_version: String,
    /// SHA-256 of the canonical JSON of `config` without its output section.
    pub config_sha256: String,
    pub config: RunConfig,
    pub noise_seed: u64,
    pub noise_eta: f64,
    pub solver: SolverRecord,
    pub inversion: InversionRecord,
    /// File name → SHA-256 of its contents.
    pub artifacts: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Output locations do not change results, so they are left out of the hash.
pub fn config_hash(config: &RunConfig) -> String {
    let scientific = RunConfig { output: Default::default(), ..config.clone() };
    sha256_hex(scientific.canonical_json().as_bytes())
}

pub fn file_hash(path: &Path) -> std::io::Result<String> {
    Ok(sha256_hex(&std::fs::read(path)?))
}

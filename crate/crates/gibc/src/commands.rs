//! The subcommands as library functions. Each reads and writes only the
//! files it is given, so stages can be rerun on artifacts from other runs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use gibc_core::factorization::{IndicatorMap, Inversion, InversionSettings};
use gibc_core::forward::{circle_series_oracle, min_circle_modes, solve_forward, FarFieldMatrix, ForwardSolution};
use gibc_core::noise::{contaminate, NoiseSpec};
use gibc_core::Complex64;
use log::{info, warn};
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::farfield_file;
use crate::manifest::{config_hash, file_hash, InversionRecord, Manifest, SolverRecord};
use crate::output;

pub const FARFIELD_FILE: &str = "farfield.txt";
pub const NOISY_FILE: &str = "farfield_noisy.txt";
pub const CSV_FILE: &str = "indicator.csv";
pub const PGM_FILE: &str = "indicator.pgm";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Worker pool for the inversion; `None` or `0` uses the available
/// parallelism.
pub fn thread_pool(threads: Option<usize>) -> Result<ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads.filter(|&t| t > 0) {
        builder = builder.num_threads(t);
    }
    Ok(builder.build()?)
}

/// Evaluates the indicator on the pool. Points are computed independently
/// and collected in grid order, so the result does not depend on the
/// number of threads.
pub fn invert_parallel(inversion: &Inversion, pool: &ThreadPool) -> Result<IndicatorMap, CliError> {
    let grid = inversion.settings.grid;
    let points = pool.install(|| (0..grid.len()).into_par_iter().map(|i| inversion.evaluate(grid.point(i))).collect::<Result<Vec<_>, _>>())?;
    let map = inversion.assemble(points)?;
    if map.morozov_fallbacks > 0 {
        warn!("Morozov fallback used for {} test functions", map.morozov_fallbacks);
    }
    if map.clamped_eigenvalues > 0 {
        info!("{} eigenvalues of F# clamped to the floor", map.clamped_eigenvalues);
    }
    Ok(map)
}

pub fn simulate(config: &RunConfig) -> Result<ForwardSolution, CliError> {
    let scattering = config.scattering()?;
    let solution = solve_forward(&scattering)?;
    let d = &solution.diagnostics;
    info!(
        "solved with m = {}, {:.1} nodes per wavelength, condition estimate {:.3e}",
        d.m, d.nodes_per_wavelength, d.condition_estimate
    );
    for w in &d.warnings {
        warn!("{w}");
    }
    Ok(solution)
}

fn ensure_parent(path: &Path) -> Result<(), CliError> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => fs::create_dir_all(dir).map_err(CliError::io(dir)),
        _ => Ok(()),
    }
}

pub fn cmd_simulate(config: &RunConfig, out: &Path) -> Result<ForwardSolution, CliError> {
    let solution = simulate(config)?;
    ensure_parent(out)?;
    farfield_file::write(out, &solution.far_field)?;
    Ok(solution)
}

pub fn cmd_contaminate(input: &Path, eta: f64, seed: u64, out: &Path) -> Result<FarFieldMatrix, CliError> {
    let spec = NoiseSpec::new(eta, seed).map_err(|e| CliError::Argument(e.to_string()))?;
    if spec.is_large() {
        warn!("noise level {eta} is large");
    }
    let u = farfield_file::read(input)?;
    let noisy = contaminate(&u, &spec);
    ensure_parent(out)?;
    farfield_file::write(out, &noisy)?;
    Ok(noisy)
}

/// Inverts the data in `input`; `expected_k`, when given, must match the
/// wavenumber recorded in the file.
pub fn invert(
    data: &FarFieldMatrix,
    expected_k: Option<f64>,
    settings: InversionSettings,
    pool: &ThreadPool,
) -> Result<IndicatorMap, CliError> {
    let k = expected_k.unwrap_or(data.k());
    if (k - data.k()).abs() > 1e-12 * k.abs().max(1.0) {
        return Err(CliError::Argument(format!("wavenumber {k} does not match the data (k = {})", data.k())));
    }
    let inversion = Inversion::new(data, k, settings)?;
    info!("delta = {:.3e}, largest eigenvalue of F# = {:.3e}", inversion.delta, inversion.spectral.largest());
    invert_parallel(&inversion, pool)
}

pub fn write_indicator(map: &IndicatorMap, out_dir: &Path) -> Result<(PathBuf, PathBuf), CliError> {
    fs::create_dir_all(out_dir).map_err(CliError::io(out_dir))?;
    let csv = out_dir.join(CSV_FILE);
    let pgm = out_dir.join(PGM_FILE);
    output::save_csv(&csv, map).map_err(CliError::io(&csv))?;
    output::save_pgm(&pgm, map).map_err(CliError::io(&pgm))?;
    Ok((csv, pgm))
}

pub fn cmd_invert(
    input: &Path,
    expected_k: Option<f64>,
    settings: InversionSettings,
    out_dir: &Path,
    pool: &ThreadPool,
) -> Result<IndicatorMap, CliError> {
    let data = farfield_file::read(input)?;
    let map = invert(&data, expected_k, settings, pool)?;
    write_indicator(&map, out_dir)?;
    Ok(map)
}

/// Parameters of the disk mode-series oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleOracle {
    pub radius: f64,
    pub k: f64,
    pub mu: Complex64,
    pub lambda: Complex64,
    pub n: usize,
    /// Defaults to `ceil(3kR) + 20`.
    pub modes: Option<usize>,
}

pub fn cmd_oracle_circle(params: &CircleOracle, out: &Path) -> Result<FarFieldMatrix, CliError> {
    let modes = params.modes.unwrap_or_else(|| min_circle_modes(params.radius, params.k) + 5);
    let u = circle_series_oracle(params.radius, params.k, params.mu, params.lambda, params.n, modes)?;
    ensure_parent(out)?;
    farfield_file::write(out, &u)?;
    Ok(u)
}

/// simulate → contaminate → invert, plus the manifest.
pub fn cmd_pipeline(config: &RunConfig, out_dir: &Path, pool: &ThreadPool) -> Result<Manifest, CliError> {
    fs::create_dir_all(out_dir).map_err(CliError::io(out_dir))?;
    let clean_path = out_dir.join(FARFIELD_FILE);
    let noisy_path = out_dir.join(NOISY_FILE);

    let solution = cmd_simulate(config, &clean_path)?;
    cmd_contaminate(&clean_path, config.noise.eta, config.noise.seed, &noisy_path)?;
    let map = cmd_invert(&noisy_path, Some(config.k), config.inversion.build()?, out_dir, pool)?;

    let mut artifacts = BTreeMap::new();
    for name in [FARFIELD_FILE, NOISY_FILE, CSV_FILE, PGM_FILE] {
        let path = out_dir.join(name);
        artifacts.insert(name.to_string(), file_hash(&path).map_err(CliError::io(&path))?);
    }
    let (lo, hi) = map.min_max();
    let d = &solution.diagnostics;
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        core_version: gibc_core::VERSION.into(),
        config_sha256: config_hash(config),
        config: config.clone(),
        noise_seed: config.noise.seed,
        noise_eta: config.noise.eta,
        solver: SolverRecord {
            m: d.m,
            coupling: config.scattering()?.coupling,
            nodes_per_wavelength: d.nodes_per_wavelength,
            condition_estimate: d.condition_estimate,
            min_pivot_ratio: d.min_pivot_ratio,
            warnings: d.warnings.clone(),
        },
        inversion: InversionRecord {
            delta: map.delta,
            largest_eigenvalue: map.largest_eigenvalue,
            clamped_eigenvalues: map.clamped_eigenvalues,
            morozov_fallbacks: map.morozov_fallbacks,
            indicator_min: lo,
            indicator_max: hi,
        },
        artifacts,
    };
    let path = out_dir.join(MANIFEST_FILE);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, json + "\n").map_err(CliError::io(&path))?;
    Ok(manifest)
}

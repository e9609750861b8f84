use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gibc::commands::{self, CircleOracle};
use gibc::config::{CoefficientSpec, ComplexSpec, DeltaSpec, RunConfig};
use gibc::CliError;
use gibc_core::Complex64;

#[derive(Debug, Parser)]
#[command(name = "gibc", version, about = "Scattering by GIBC obstacles and factorization-method reconstruction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the forward problem and write the far-field matrix.
    Simulate {
        #[command(flatten)]
        run: RunArgs,
        /// Output file; defaults to <output dir>/farfield.txt.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add multiplicative uniform noise to a far-field file.
    Contaminate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.01)]
        eta: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the indicator map from a far-field file.
    Invert {
        #[arg(long)]
        input: PathBuf,
        /// JSON config; only the inversion section is used.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Wavenumber to check against the file header.
        #[arg(long)]
        k: Option<f64>,
        /// Noise bound; overrides the config's delta.
        #[arg(long)]
        delta: Option<f64>,
        /// Output directory for indicator.csv and indicator.pgm.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        threads: ThreadArgs,
    },
    /// Far-field matrix of a disk from its mode series.
    OracleCircle {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 2.0)]
        k: f64,
        #[arg(long, default_value = "0.1", value_parser = parse_complex)]
        mu: Complex64,
        #[arg(long, default_value = "0", value_parser = parse_complex)]
        lambda: Complex64,
        #[arg(long, default_value_t = 50)]
        n: usize,
        /// Number of modes; defaults to ceil(3kR) + 20.
        #[arg(long)]
        modes: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// simulate, contaminate and invert, then write a manifest.
    Pipeline {
        #[command(flatten)]
        run: RunArgs,
        /// Output directory; overrides the config.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        threads: ThreadArgs,
    },
}

/// Config file plus the flags that override it.
#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    k: Option<f64>,
    /// Constant μ, e.g. `0.1` or `0.1-0.05i`.
    #[arg(long, value_parser = parse_complex)]
    mu: Option<Complex64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct ThreadArgs {
    /// Worker threads for the inversion (0 = all cores).
    #[arg(long, env = "GIBC_THREADS")]
    threads: Option<usize>,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.parse::<Complex64>().map_err(|_| format!("not a complex number: {s:?}"))
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    Ok(match path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    })
}

impl RunArgs {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = load_config(self.config.as_deref())?;
        if let Some(k) = self.k {
            cfg.k = k;
        }
        if let Some(mu) = self.mu {
            cfg.impedance.mu = CoefficientSpec::Constant(ComplexSpec::from(mu));
        }
        if let Some(eta) = self.eta {
            cfg.noise.eta = eta;
        }
        if let Some(seed) = self.seed {
            cfg.noise.seed = seed;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { run, out } => {
            let cfg = run.resolve()?;
            let out = out.unwrap_or_else(|| cfg.output.dir.join(commands::FARFIELD_FILE));
            let solution = commands::cmd_simulate(&cfg, &out)?;
            let d = &solution.diagnostics;
            println!(
                "wrote {} (n = {}, m = {}, condition estimate {:.3e})",
                out.display(),
                cfg.n,
                d.m,
                d.condition_estimate
            );
            for w in &d.warnings {
                println!("warning: {w}");
            }
        }
        Command::Contaminate { input, eta, seed, out } => {
            commands::cmd_contaminate(&input, eta, seed, &out)?;
            println!("wrote {}", out.display());
        }
        Command::Invert { input, config, k, delta, out, threads } => {
            let mut cfg = load_config(config.as_deref())?;
            if let Some(d) = delta {
                cfg.inversion.delta = DeltaSpec::Fixed(d);
            }
            let settings = cfg.inversion.build()?;
            let out = out.unwrap_or(cfg.output.dir);
            let pool = commands::thread_pool(threads.threads)?;
            let map = commands::cmd_invert(&input, k, settings, &out, &pool)?;
            let (lo, hi) = map.min_max();
            println!(
                "wrote {} and {} (delta = {:.3e}, W in [{lo:.3e}, {hi:.3e}], {} Morozov fallbacks)",
                out.join(commands::CSV_FILE).display(),
                out.join(commands::PGM_FILE).display(),
                map.delta,
                map.morozov_fallbacks
            );
        }
        Command::OracleCircle { radius, k, mu, lambda, n, modes, out } => {
            let params = CircleOracle { radius, k, mu, lambda, n, modes };
            commands::cmd_oracle_circle(&params, &out)?;
            println!("wrote {}", out.display());
        }
        Command::Pipeline { run, out, threads } => {
            let mut cfg = run.resolve()?;
            if let Some(dir) = out {
                cfg.output.dir = dir;
            }
            let pool = commands::thread_pool(threads.threads)?;
            let dir = cfg.output.dir.clone();
            let manifest = commands::cmd_pipeline(&cfg, &dir, &pool)?;
            println!(
                "wrote {} artifacts to {} (config {}, delta = {:.3e}, {} Morozov fallbacks)",
                manifest.artifacts.len() + 1,
                dir.display(),
                &manifest.config_sha256[..12],
                manifest.inversion.delta,
                manifest.inversion.morozov_fallbacks
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

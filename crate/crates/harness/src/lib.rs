//! Config-driven experiment runner for the `lfmo` toolkit.
//!
//! Five experiment kinds, each reading one TOML config and emitting one CSV
//! table: a KS p-value study of convergence in distribution, a mean study of
//! relative errors against the limiting mean, reliability curves of finite
//! systems next to their limit model, hypothesis diagnostics for signature
//! families, and an MTTF table comparing the exact formula with Monte Carlo.
//!
//! Results are a pure function of (config, master seed): every Monte Carlo
//! job derives its own random stream from the master seed and its job
//! coordinates, so worker count and scheduling never change the output.

pub mod config;
pub mod experiments;
pub mod seeding;
pub mod table;

use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use config::{Config, Kind};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Anything wrong with the config file or CLI arguments.
    #[error("config error: {0}")]
    Config(String),
    /// Failures while running a validated experiment.
    #[error("runtime error: {0}")]
    Runtime(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<lfmo::Error> for Error {
    fn from(e: lfmo::Error) -> Self {
        Error::Runtime(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 2 for config problems, 3 for runtime failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Config(_) => 2,
            Error::Runtime(_) | Error::Io(_) => 3,
        }
    }
}

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub paper_scale: bool,
}

/// Load the config, run the experiment, and write the table to the chosen
/// output (`--out`, then the config's `output`, then stdout).
pub fn run(kind: Kind, config_path: &PathBuf, overrides: &Overrides) -> Result<()> {
    let text = std::fs::read_to_string(config_path).map_err(|e| {
        Error::Config(format!("cannot read {}: {e}", config_path.display()))
    })?;
    let config = Config::resolve(kind, &text, config_path, overrides)?;
    let table = run_to_table(&config)?;
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let rendered = table.render(Some(now));
    match overrides.out.as_ref().or(config.output.as_ref()) {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

/// Run a validated config inside a worker pool of the configured size and
/// return the result table without writing it anywhere.
pub fn run_to_table(config: &Config) -> Result<table::ResultTable> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::Runtime(format!("worker pool: {e}")))?;
    pool.install(|| experiments::run(config))
}

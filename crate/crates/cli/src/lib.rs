//! The `mzv` command line: evaluation, identity verification, parameter
//! scans, relation statistics and generating-series checks.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Layer, RunConfig};
use crate::report::Format;

/// Everything passed, or was proven when proof was asked for.
pub const EXIT_OK: u8 = 0;
/// A numeric check failed.
pub const EXIT_FAIL: u8 = 1;
/// Numerically fine, but an exact check stayed unresolved.
pub const EXIT_UNRESOLVED: u8 = 2;
/// Bad input, unknown id or any other error.
pub const EXIT_ERROR: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "mzv", version, about = "Multiple zeta values: evaluation and identity verification")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Decimal digits of working precision (at least 10).
    #[arg(long, global = true, env = "MZV_DIGITS")]
    pub digits: Option<u32>,
    /// numeric, exact or both.
    #[arg(long, global = true, env = "MZV_MODE")]
    pub mode: Option<String>,
    #[arg(long, global = true, env = "MZV_REPORT", value_enum)]
    pub report: Option<Format>,
    /// Value cache file, read before and written after the run.
    #[arg(long, global = true, env = "MZV_CACHE")]
    pub cache: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, env = "MZV_JOBS")]
    pub jobs: Option<usize>,
    /// Residuals up to 10^-K pass (default: digits - 5).
    #[arg(long, global = true, env = "MZV_TOLERANCE", value_name = "K")]
    pub tolerance: Option<u32>,
    /// TOML file with any of: digits, mode, report, cache, jobs, tolerance.
    #[arg(long, global = true, env = "MZV_CONFIG")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one MZV, e.g. `eval 2,1`.
    Eval { index: String },
    /// Check one instance of a catalog identity.
    Verify {
        id: String,
        #[arg(long)]
        n: Option<u32>,
        /// One parameter point, e.g. `1,2,3` or `2,-1,1/2`.
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        variant: Option<String>,
    },
    /// Check a catalog identity over a range of n and a parameter grid.
    Scan {
        id: String,
        /// `A..B` (inclusive) or a single value.
        #[arg(long = "n-range", visible_alias = "n", value_name = "A..B")]
        n_range: Option<String>,
        /// Semicolon-separated points, e.g. `1,1,1;1,2,3`.
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        variant: Option<String>,
    },
    /// Size and rank of the relation space at one weight.
    Relations {
        #[arg(long)]
        weight: u32,
        /// Comma-separated subset of fds, duality.
        #[arg(long, value_delimiter = ',', default_value = "fds,duality")]
        families: Vec<String>,
    },
    /// Compare a generating-series identity monomial by monomial.
    SeriesCheck {
        id: String,
        /// Highest total degree compared.
        #[arg(long)]
        degree: Option<i32>,
    },
    /// List the identity catalog.
    List,
}

impl GlobalArgs {
    fn layer(&self) -> Layer {
        Layer {
            digits: self.digits,
            mode: self.mode.clone(),
            report: self.report.map(|f| f.to_string()),
            cache: self.cache.clone(),
            jobs: self.jobs,
            tolerance: self.tolerance,
        }
    }

    pub fn run_config(&self) -> anyhow::Result<RunConfig> {
        let file = match &self.config {
            Some(p) => Layer::from_file(p)?,
            None => Layer::default(),
        };
        RunConfig::resolve(self.layer().over(file))
    }
}

/// Parses `args`, runs the command and returns the exit code. Reports go to
/// `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match commands::execute(&cli) {
        Ok(outcome) => {
            if let Err(e) = out.write_all(outcome.report.as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_ERROR;
            }
            for line in &outcome.notes {
                let _ = writeln!(err, "{line}");
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

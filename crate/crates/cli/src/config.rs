//! Run settings merged from flags, `MZV_*` variables, a TOML file and defaults.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use mzv::Mode;
use serde::Deserialize;

use crate::report::Format;

pub const DEFAULT_DIGITS: u32 = 30;

/// Settings as given by one source; every field optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    pub digits: Option<u32>,
    pub mode: Option<String>,
    pub report: Option<String>,
    pub cache: Option<PathBuf>,
    pub jobs: Option<usize>,
    /// Pass threshold exponent: residuals up to `10^-tolerance` pass.
    pub tolerance: Option<u32>,
}

impl Layer {
    pub fn from_file(path: &Path) -> Result<Layer> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Fields of `self`, falling back to `lower` where unset.
    pub fn over(self, lower: Layer) -> Layer {
        Layer {
            digits: self.digits.or(lower.digits),
            mode: self.mode.or(lower.mode),
            report: self.report.or(lower.report),
            cache: self.cache.or(lower.cache),
            jobs: self.jobs.or(lower.jobs),
            tolerance: self.tolerance.or(lower.tolerance),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub digits: u32,
    pub mode: Mode,
    pub report: Format,
    pub cache: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub tolerance: Option<u32>,
}

impl RunConfig {
    pub fn resolve(layer: Layer) -> Result<RunConfig> {
        let digits = layer.digits.unwrap_or(DEFAULT_DIGITS);
        if digits < 10 {
            bail!("digits must be at least 10, got {digits}");
        }
        if layer.jobs == Some(0) {
            bail!("jobs must be at least 1");
        }
        if let Some(t) = layer.tolerance {
            if t == 0 || t > digits {
                bail!("tolerance must lie in 1..={digits}, got {t}");
            }
        }
        Ok(RunConfig {
            digits,
            mode: layer.mode.as_deref().map(str::parse).transpose()?.unwrap_or_default(),
            report: layer.report.as_deref().map(str::parse).transpose()?.unwrap_or_default(),
            cache: layer.cache,
            jobs: layer.jobs,
            tolerance: layer.tolerance,
        })
    }
}

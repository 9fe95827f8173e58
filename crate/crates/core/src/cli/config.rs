use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::optimize::{DEFAULT_MAX_ITERATIONS, DEFAULT_SEED, DEFAULT_X_TOLERANCE, DEFAULT_F_TOLERANCE};

pub const DEFAULT_N_MIN: f64 = 0.05;
pub const DEFAULT_N_MAX: f64 = 3.0;
pub const DEFAULT_STEPS: usize = 60;
pub const DEFAULT_SWEEP_RESTARTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidConfig(format!("unknown output format `{other}`"))),
        }
    }
}

/// Parses `on`/`off` (also `true`/`false`, `yes`/`no`, `1`/`0`).
pub fn parse_switch(s: &str) -> Result<bool> {
    match s.to_ascii_lowercase().as_str() {
        "on" | "true" | "yes" | "1" => Ok(true),
        "off" | "false" | "no" | "0" => Ok(false),
        other => Err(Error::InvalidConfig(format!("expected on|off, got `{other}`"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
enum Switch {
    Bool(bool),
    Text(SwitchText),
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum SwitchText {
    On,
    Off,
}

impl From<Switch> for bool {
    fn from(s: Switch) -> bool {
        match s {
            Switch::Bool(b) => b,
            Switch::Text(SwitchText::On) => true,
            Switch::Text(SwitchText::Off) => false,
        }
    }
}

/// Every setting a sweep accepts, each optional. Filled from command-line
/// flags and from a `key = value` config file; [`SweepSettings::or`] merges
/// the two with the receiver winning.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSettings {
    pub n_min: Option<f64>,
    pub n_max: Option<f64>,
    pub steps: Option<usize>,
    pub prior_q1: Option<f64>,
    pub receivers: Option<usize>,
    pub dim: Option<usize>,
    pub restarts: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    #[serde(default, deserialize_with = "deserialize_switch")]
    pub baseline: Option<bool>,
    pub phi_box_max: Option<f64>,
}

fn deserialize_switch<'de, D>(de: D) -> std::result::Result<Option<bool>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    Ok(Option::<Switch>::deserialize(de)?.map(bool::from))
}

impl SweepSettings {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Field-wise `self.or(fallback)`.
    pub fn or(self, fallback: SweepSettings) -> Self {
        Self {
            n_min: self.n_min.or(fallback.n_min),
            n_max: self.n_max.or(fallback.n_max),
            steps: self.steps.or(fallback.steps),
            prior_q1: self.prior_q1.or(fallback.prior_q1),
            receivers: self.receivers.or(fallback.receivers),
            dim: self.dim.or(fallback.dim),
            restarts: self.restarts.or(fallback.restarts),
            seed: self.seed.or(fallback.seed),
            out: self.out.or(fallback.out),
            format: self.format.or(fallback.format),
            baseline: self.baseline.or(fallback.baseline),
            phi_box_max: self.phi_box_max.or(fallback.phi_box_max),
        }
    }

    pub fn resolve(self) -> Result<SweepConfig> {
        let config = SweepConfig {
            n_min: self.n_min.unwrap_or(DEFAULT_N_MIN),
            n_max: self.n_max.unwrap_or(DEFAULT_N_MAX),
            steps: self.steps.unwrap_or(DEFAULT_STEPS),
            prior_q1: self.prior_q1.unwrap_or(0.5),
            receivers: self.receivers.unwrap_or(2),
            dim: self.dim,
            restarts: self.restarts.unwrap_or(DEFAULT_SWEEP_RESTARTS),
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            max_iterations: DEFAULT_MAX_ITERATIONS,
            x_tolerance: DEFAULT_X_TOLERANCE,
            f_tolerance: DEFAULT_F_TOLERANCE,
            phi_box_max: self.phi_box_max.unwrap_or(std::f64::consts::TAU),
            baseline: self.baseline.unwrap_or(true),
            out: self.out,
            format: self.format.unwrap_or(OutputFormat::Csv),
        };
        config.validate()?;
        Ok(config)
    }
}

/// A fully resolved sweep over mean photon number.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n_min: f64,
    pub n_max: f64,
    pub steps: usize,
    pub prior_q1: f64,
    pub receivers: usize,
    /// Truncation override; `None` picks the default per grid point.
    pub dim: Option<usize>,
    pub restarts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    pub x_tolerance: f64,
    pub f_tolerance: f64,
    pub phi_box_max: f64,
    pub baseline: bool,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepSettings::default().resolve().expect("defaults are valid")
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if !(self.n_min.is_finite() && self.n_max.is_finite()) || self.n_min < 0.0 || self.n_min >= self.n_max {
            return fail("mean photon range must satisfy 0 <= n_min < n_max");
        }
        if self.steps < 2 {
            return fail("steps must be at least 2");
        }
        if !(0.0..=1.0).contains(&self.prior_q1) {
            return fail("prior q1 must lie in [0, 1]");
        }
        if self.receivers == 0 {
            return fail("at least one receiver is required");
        }
        if self.dim == Some(0) {
            return fail("dim must be at least 1");
        }
        if self.restarts == 0 {
            return fail("restarts must be positive");
        }
        if !(self.phi_box_max.is_finite() && self.phi_box_max > 0.0) {
            return fail("phi box maximum must be a positive number");
        }
        Ok(())
    }

    /// Evenly spaced grid including both ends.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.n_max - self.n_min;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.n_max } else { self.n_min + span * i as f64 / (self.steps - 1) as f64 })
            .collect()
    }
}

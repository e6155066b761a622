//! Run configuration: defaults, then an optional JSON file, then `ER_*`
//! environment variables, then explicit overrides.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coding::Mode;
use crate::error::{Error, Result};
use crate::scalar::DEFAULT_PRECISION;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::Parse(format!("unknown output format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub precision_bits: usize,
    pub mode: Mode,
    pub tolerance_rel: f64,
    pub seed: u64,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: DEFAULT_PRECISION,
            mode: Mode::Rational,
            tolerance_rel: 1e-9,
            seed: 0,
            output_format: OutputFormat::Json,
        }
    }
}

fn parse_env<T: std::str::FromStr>(
    get: &impl Fn(&str) -> Option<String>,
    key: &str,
) -> Result<Option<T>> {
    match get(key) {
        None => Ok(None),
        Some(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Parse(format!("{key}={v:?} is not valid"))),
    }
}

impl RunConfig {
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: RunConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies `ER_PRECISION_BITS`, `ER_MODE`, `ER_TOLERANCE_REL`, `ER_SEED`
    /// and `ER_OUTPUT_FORMAT` from the process environment.
    pub fn with_env(self) -> Result<Self> {
        self.with_env_from(|k| std::env::var(k).ok())
    }

    pub fn with_env_from(mut self, get: impl Fn(&str) -> Option<String>) -> Result<Self> {
        if let Some(v) = parse_env(&get, "ER_PRECISION_BITS")? {
            self.precision_bits = v;
        }
        if let Some(v) = parse_env::<String>(&get, "ER_MODE")? {
            self.mode = v.parse()?;
        }
        if let Some(v) = parse_env(&get, "ER_TOLERANCE_REL")? {
            self.tolerance_rel = v;
        }
        if let Some(v) = parse_env(&get, "ER_SEED")? {
            self.seed = v;
        }
        if let Some(v) = parse_env::<String>(&get, "ER_OUTPUT_FORMAT")? {
            self.output_format = v.parse()?;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 53 {
            return Err(Error::Argument(format!(
                "precision_bits = {} is below 53",
                self.precision_bits
            )));
        }
        if !(self.tolerance_rel > 0.0) {
            return Err(Error::Argument(format!(
                "tolerance_rel = {} must be positive",
                self.tolerance_rel
            )));
        }
        Ok(())
    }
}

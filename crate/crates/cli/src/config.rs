//! Run configuration: defaults, optional key=value config file, and
//! command-line overrides (flags win over the file, the file wins over
//! defaults).

use std::path::Path;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    /// Tolerance for entangled/separable verdicts.
    pub eps: f64,
    /// RNG seed for Monte Carlo commands.
    pub seed: u64,
    /// Cap on the single-qudit dimension of dense density-matrix paths.
    pub dmax_dense: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            eps: 1e-9,
            seed: 1,
            dmax_dense: 8,
            format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    /// Parse a `key=value` file; `#` starts a comment line. Recognized
    /// keys: `eps`, `seed`, `dmax_dense`, `format`.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "eps" => {
                    self.eps = value.parse().map_err(|_| {
                        CliError::Usage(format!("config line {}: bad eps `{value}`", lineno + 1))
                    })?;
                }
                "seed" => {
                    self.seed = value.parse().map_err(|_| {
                        CliError::Usage(format!("config line {}: bad seed `{value}`", lineno + 1))
                    })?;
                }
                "dmax_dense" => {
                    self.dmax_dense = value.parse().map_err(|_| {
                        CliError::Usage(format!(
                            "config line {}: bad dmax_dense `{value}`",
                            lineno + 1
                        ))
                    })?;
                }
                "format" => {
                    self.format = match value {
                        "csv" => OutputFormat::Csv,
                        "json" => OutputFormat::Json,
                        other => {
                            return Err(CliError::Usage(format!(
                                "config line {}: format must be csv or json, got `{other}`",
                                lineno + 1
                            )))
                        }
                    };
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "config line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !self.eps.is_finite() || self.eps <= 0.0 {
            return Err(CliError::Usage(format!(
                "eps must be positive, got {}",
                self.eps
            )));
        }
        if self.dmax_dense < 2 || self.dmax_dense > 8 {
            return Err(CliError::Usage(format!(
                "dmax_dense must lie in 2..=8, got {}",
                self.dmax_dense
            )));
        }
        Ok(())
    }
}

//! JSON experiment configuration: model, bath, truncation, optional
//! parameter sweep, and optional output destination.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bath::BathConfig;
use crate::eigensystem::JCParams;
use crate::error::JcError;

/// Sweep parameters that address the model or bath directly. Two more
/// names are interpreted by specific commands instead of rewriting the
/// configuration: `t_ref` (reference temperature of a trace-distance scan)
/// and `g_r` (coupling-to-temperature ratio of a negativity scan).
const SWEEPABLE: [&str; 10] = [
    "omega0",
    "omega_c",
    "g",
    "gamma_sigma",
    "gamma_a",
    "t_sigma",
    "t_a",
    "t",
    "t_ref",
    "g_r",
];

/// One experiment, as read from a config file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: JCParams,
    pub bath: BathConfig,
    /// Number of excitation subspaces kept in the rate equation.
    pub truncation: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

/// Linear grid over one named parameter.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

/// Where and how a command writes its table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: PathBuf,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl SweepSpec {
    pub fn validate(&self, bath: &BathConfig) -> Result<(), JcError> {
        if !SWEEPABLE.contains(&self.parameter.as_str()) {
            return Err(JcError::Config(format!(
                "unknown sweep parameter {:?}, expected one of {SWEEPABLE:?}",
                self.parameter
            )));
        }
        let individual = matches!(bath, BathConfig::Individual { .. });
        match self.parameter.as_str() {
            "t_sigma" | "t_a" if !individual => {
                return Err(JcError::Config(format!(
                    "sweep parameter {:?} needs individual baths",
                    self.parameter
                )));
            }
            "t" if individual => {
                return Err(JcError::Config(
                    "sweep parameter \"t\" needs a common bath".into(),
                ));
            }
            _ => {}
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(JcError::Config(format!(
                "sweep bounds must be finite, got {} .. {}",
                self.start, self.stop
            )));
        }
        if self.steps < 1 {
            return Err(JcError::Config("sweep needs at least one step".into()));
        }
        if self.steps == 1 && self.start != self.stop {
            return Err(JcError::Config(
                "a single-step sweep must have start == stop".into(),
            ));
        }
        Ok(())
    }

    /// The grid points, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let span = self.stop - self.start;
        (0..self.steps)
            .map(|i| self.start + span * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, JcError> {
        let config: ExperimentConfig = serde_json::from_str(text)
            .map_err(|e| JcError::Config(format!("config does not parse: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, JcError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            JcError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), JcError> {
        self.model.validate()?;
        self.bath.validate()?;
        if self.truncation < 1 {
            return Err(JcError::Config(
                "truncation must keep at least one excitation subspace".into(),
            ));
        }
        if let Some(sweep) = &self.sweep {
            sweep.validate(&self.bath)?;
        }
        Ok(())
    }

    /// A copy of the configuration with one model or bath parameter
    /// replaced by a sweep value. The command-interpreted names (`t_ref`,
    /// `g_r`) are not model parameters and are rejected here.
    pub fn with_sweep_value(&self, parameter: &str, value: f64) -> Result<Self, JcError> {
        let mut next = self.clone();
        match (parameter, &mut next.bath) {
            ("omega0", _) => next.model.omega0 = value,
            ("omega_c", _) => next.model.omega_c = value,
            ("g", _) => next.model.g = value,
            (
                "gamma_sigma",
                BathConfig::Individual { gamma_sigma, .. } | BathConfig::Common { gamma_sigma, .. },
            ) => *gamma_sigma = value,
            (
                "gamma_a",
                BathConfig::Individual { gamma_a, .. } | BathConfig::Common { gamma_a, .. },
            ) => *gamma_a = value,
            ("t_sigma", BathConfig::Individual { t_sigma, .. }) => *t_sigma = value,
            ("t_a", BathConfig::Individual { t_a, .. }) => *t_a = value,
            ("t", BathConfig::Common { t, .. }) => *t = value,
            _ => {
                return Err(JcError::Config(format!(
                    "sweep parameter {parameter:?} does not address the model or this bath topology"
                )));
            }
        }
        next.model.validate().map_err(|e| {
            JcError::Config(format!("sweep value {value} leaves an invalid model: {e}"))
        })?;
        next.bath.validate().map_err(|e| {
            JcError::Config(format!("sweep value {value} leaves an invalid bath: {e}"))
        })?;
        Ok(next)
    }
}

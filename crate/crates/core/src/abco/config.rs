use serde::{Deserialize, Serialize};

use crate::common::OptimizationMode;
use crate::error::{Error, Result};

/// Tunables of the bacterial colony optimiser.
///
/// Serialized keys keep the conventional short symbols (`N_s`, `e`, `s`, `k`, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AbcoConfig {
    /// Population size.
    pub size: usize,
    /// Iteration budget.
    pub iter: usize,
    /// Step length of tumbles and directed moves.
    #[serde(rename = "N_s")]
    pub step_size: f64,
    /// Exploration passes per iteration.
    #[serde(rename = "N_explor")]
    pub explore_steps: usize,
    /// Exploitation passes per iteration.
    #[serde(rename = "N_explt")]
    pub exploit_steps: usize,
    /// Tumble rounds per exploration pass.
    #[serde(rename = "N_tum")]
    pub tumble_steps: usize,
    /// Minimum personal-best gain that earns a directed step.
    #[serde(rename = "e")]
    pub threshold: f64,
    /// Fraction of the population kept by reproduction.
    #[serde(rename = "s")]
    pub split: f64,
    /// Neighbour count for exploitation and reproduction.
    #[serde(rename = "k")]
    pub neighbours: usize,
    /// Checkpoint spacing, percent of `iter`.
    pub generation_gap: f64,
    /// Percent of unchanged personal bests that stops the run at a checkpoint.
    pub unchanged_threshold: f64,
    pub mode: OptimizationMode,
}

impl Default for AbcoConfig {
    fn default() -> Self {
        AbcoConfig {
            size: 100,
            iter: 100,
            step_size: 1.0,
            explore_steps: 4,
            exploit_steps: 1,
            tumble_steps: 1,
            threshold: 0.05,
            split: 0.8,
            neighbours: 2,
            generation_gap: 25.0,
            unchanged_threshold: 80.0,
            mode: OptimizationMode::Min,
        }
    }
}

impl AbcoConfig {
    /// Checks every range constraint; the error names the offending key.
    pub fn validate(&self) -> Result<()> {
        let positive = |key: &str, v: usize| {
            if v == 0 {
                Err(Error::config(key, "must be at least 1"))
            } else {
                Ok(())
            }
        };
        positive("size", self.size)?;
        positive("iter", self.iter)?;
        positive("N_explor", self.explore_steps)?;
        positive("N_tum", self.tumble_steps)?;
        positive("k", self.neighbours)?;
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return Err(Error::config("N_s", format!("must be positive and finite, got {}", self.step_size)));
        }
        if self.threshold.is_nan() || self.threshold < 0.0 {
            return Err(Error::config("e", format!("must be non-negative, got {}", self.threshold)));
        }
        if !(self.split > 0.0 && self.split <= 1.0) {
            return Err(Error::config("s", format!("must lie in (0, 1], got {}", self.split)));
        }
        for (key, v) in [("generation_gap", self.generation_gap), ("unchanged_threshold", self.unchanged_threshold)] {
            if !(v > 0.0 && v <= 100.0) {
                return Err(Error::config(key, format!("must be a percentage in (0, 100], got {v}")));
            }
        }
        Ok(())
    }

    /// Survivors kept by reproduction: `max(1, round(s * size))`, half rounded up.
    pub fn retained_count(&self) -> usize {
        let r = (self.split * self.size as f64).round() as usize;
        r.clamp(1, self.size)
    }

    /// Iterations between stagnation checkpoints.
    pub fn checkpoint_period(&self) -> usize {
        ((self.generation_gap / 100.0 * self.iter as f64).round() as usize).max(1)
    }
}

//! Ant-colony optimisation for continuous domains (ACO_R).
//!
//! The colony keeps an archive of `size` solutions ranked by value. Each
//! iteration `sample_count` ants pick a guide from the archive with a
//! Gaussian kernel over rank (width `q * size`), sample every coordinate
//! from a normal centred on the guide with deviation
//! `zeta * mean |x_e - x_guide|` across the archive, and the best `size`
//! of archive plus samples survive.

use serde::{Deserialize, Serialize};

use super::rank_key;
use crate::common::{repair_in_place, Objective, Outcome, RngStream, SearchSpace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcorConfig {
    /// Archive size.
    pub size: usize,
    pub iter: usize,
    /// New samples per iteration.
    pub sample_count: usize,
    /// Kernel width `q` over archive ranks (selection pressure).
    pub intent_factor: f64,
    /// Deviation-distance ratio.
    pub zeta: f64,
}

impl Default for AcorConfig {
    fn default() -> Self {
        AcorConfig::for_size(100)
    }
}

impl AcorConfig {
    /// Reference settings for an archive of `size`: a quarter of it as new
    /// samples per iteration (25 for 100, 5 for 25).
    pub fn for_size(size: usize) -> Self {
        AcorConfig { size, iter: 100, sample_count: default_sample_count(size), intent_factor: 0.5, zeta: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.size < 2 {
            return Err(Error::config("size", "archive needs at least 2 entries"));
        }
        if self.iter == 0 {
            return Err(Error::config("iter", "must be at least 1"));
        }
        if self.sample_count == 0 {
            return Err(Error::config("sample_count", "must be at least 1"));
        }
        for (key, v) in [("intent_factor", self.intent_factor), ("zeta", self.zeta)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(key, format!("must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }
}

/// Reference sample count: 25 for an archive of 100, 5 for 25; a quarter
/// of larger archives and a fifth of smaller ones.
pub fn default_sample_count(size: usize) -> usize {
    if size >= 100 {
        size / 4
    } else {
        (size / 5).max(1)
    }
}

/// Normalised guide-selection probabilities for ranks `1..=size`.
///
/// Gaussian kernel `exp(-(rank-1)^2 / (2 (q size)^2))`; its constant factor
/// cancels in the normalisation. Weights are floored at the smallest normal
/// `f64` so that no entry becomes unreachable when `q` is tiny.
pub fn selection_weights(size: usize, intent_factor: f64) -> Vec<f64> {
    let width = intent_factor * size as f64;
    let raw: Vec<f64> =
        (0..size).map(|rank| (-(rank as f64).powi(2) / (2.0 * width * width)).exp().max(f64::MIN_POSITIVE)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| (w / total).max(f64::MIN_POSITIVE)).collect()
}

/// Solution archive kept sorted best first.
#[derive(Debug, Clone, PartialEq)]
pub struct Archive {
    pub positions: Vec<Vec<f64>>,
    pub values: Vec<f64>,
}

impl Archive {
    pub fn new(mut entries: Vec<(Vec<f64>, f64)>) -> Self {
        entries.sort_by(|a, b| rank_key(a.1).total_cmp(&rank_key(b.1)));
        let (positions, values) = entries.into_iter().unzip();
        Archive { positions, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Per-coordinate sampling deviation around entry `guide`.
    pub fn deviation(&self, guide: usize, zeta: f64) -> Vec<f64> {
        let n = self.len();
        let centre = &self.positions[guide];
        (0..centre.len())
            .map(|d| {
                let spread: f64 = self.positions.iter().map(|p| (p[d] - centre[d]).abs()).sum();
                zeta * spread / (n - 1) as f64
            })
            .collect()
    }

    /// Merges `samples` and keeps the best `capacity` entries. Ties keep
    /// archive entries ahead of new samples.
    pub fn merge(&mut self, samples: Vec<(Vec<f64>, f64)>, capacity: usize) {
        let mut entries: Vec<(Vec<f64>, f64)> = self.positions.drain(..).zip(self.values.drain(..)).collect();
        entries.extend(samples);
        entries.sort_by(|a, b| rank_key(a.1).total_cmp(&rank_key(b.1)));
        entries.truncate(capacity);
        let (positions, values) = entries.into_iter().unzip();
        self.positions = positions;
        self.values = values;
    }

    pub fn is_sorted(&self) -> bool {
        self.values.windows(2).all(|w| rank_key(w[0]) <= rank_key(w[1]))
    }
}

fn roulette(weights: &[f64], rng: &mut RngStream) -> usize {
    let mut u = rng.unit();
    for (i, w) in weights.iter().enumerate() {
        if u < *w {
            return i;
        }
        u -= w;
    }
    weights.len() - 1
}

/// Draws one ant: guide index, then one normal per coordinate, then repair.
pub fn sample_ant(archive: &Archive, weights: &[f64], zeta: f64, space: &SearchSpace, rng: &mut RngStream) -> Vec<f64> {
    let guide = roulette(weights, rng);
    let sigma = archive.deviation(guide, zeta);
    let mut x: Vec<f64> =
        archive.positions[guide].iter().zip(&sigma).map(|(&mu, &s)| mu + s * rng.standard_normal()).collect();
    repair_in_place(&mut x, space, rng);
    x
}

pub fn run_acor<O: Objective + ?Sized>(
    objective: &O,
    space: &SearchSpace,
    cfg: &AcorConfig,
    rng: &mut RngStream,
) -> Result<Outcome> {
    cfg.validate()?;
    let initial = (0..cfg.size)
        .map(|_| {
            let x = space.sample(rng);
            let v = objective.evaluate(&x);
            (x, v)
        })
        .collect();
    let mut archive = Archive::new(initial);
    let mut evaluations = cfg.size as u64;
    let weights = selection_weights(cfg.size, cfg.intent_factor);

    for _ in 0..cfg.iter {
        let samples = (0..cfg.sample_count)
            .map(|_| {
                let x = sample_ant(&archive, &weights, cfg.zeta, space, rng);
                let v = objective.evaluate(&x);
                (x, v)
            })
            .collect();
        evaluations += cfg.sample_count as u64;
        archive.merge(samples, cfg.size);
    }

    let best_value = archive.values[0];
    Ok(Outcome {
        failed: !best_value.is_finite(),
        best_value,
        best_position: archive.positions.swap_remove(0),
        evaluations,
        iterations_executed: cfg.iter,
        early_stopped: false,
        nonfinite_events: 0,
    })
}

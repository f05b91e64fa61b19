//! Geometry, population and randomness primitives shared by every optimiser.

mod bacterium;
mod geometry;
mod rng;

pub use bacterium::{seed_population, Bacterium};
pub(crate) use geometry::dist as geometry_dist;
pub use geometry::{euclidean_distance, k_nearest, repair_bounds, repair_in_place};
pub use rng::{derive_seed, splitmix64, RngStream};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A box-shaped search domain: `dim` coordinates sharing one `[lb, ub]` interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    dim: usize,
    lb: f64,
    ub: f64,
}

impl SearchSpace {
    pub fn new(dim: usize, lb: f64, ub: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::config("dim", "dimension must be at least 1"));
        }
        if !lb.is_finite() || !ub.is_finite() {
            return Err(Error::config("bounds", format!("bounds must be finite, got [{lb}, {ub}]")));
        }
        if lb >= ub {
            return Err(Error::config("bounds", format!("lower bound {lb} must be below upper bound {ub}")));
        }
        Ok(SearchSpace { dim, lb, ub })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lb(&self) -> f64 {
        self.lb
    }

    pub fn ub(&self) -> f64 {
        self.ub
    }

    #[inline]
    pub fn contains_coord(&self, x: f64) -> bool {
        x >= self.lb && x <= self.ub
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dim && point.iter().all(|&x| self.contains_coord(x))
    }

    /// Draws a point uniformly from the box.
    pub fn sample(&self, rng: &mut RngStream) -> Vec<f64> {
        (0..self.dim).map(|_| rng.uniform(self.lb, self.ub)).collect()
    }
}

/// Whether smaller or larger objective values are preferred.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizationMode {
    #[default]
    Min,
    Max,
}

impl OptimizationMode {
    /// `true` when `candidate` is strictly better than `incumbent`.
    #[inline]
    pub fn is_better(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            OptimizationMode::Min => candidate < incumbent,
            OptimizationMode::Max => candidate > incumbent,
        }
    }

    /// Signed gain of moving from `incumbent` to `candidate`; positive means better.
    #[inline]
    pub fn improvement(self, incumbent: f64, candidate: f64) -> f64 {
        match self {
            OptimizationMode::Min => incumbent - candidate,
            OptimizationMode::Max => candidate - incumbent,
        }
    }

    /// Total order placing better values first.
    #[inline]
    pub fn cmp_values(self, a: f64, b: f64) -> std::cmp::Ordering {
        match self {
            OptimizationMode::Min => a.total_cmp(&b),
            OptimizationMode::Max => b.total_cmp(&a),
        }
    }
}

/// Something that maps a point to a scalar objective value.
pub trait Objective {
    fn evaluate(&self, point: &[f64]) -> f64;
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64,
{
    fn evaluate(&self, point: &[f64]) -> f64 {
        self(point)
    }
}

/// Result of a single optimiser run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub best_value: f64,
    pub best_position: Vec<f64>,
    pub evaluations: u64,
    pub iterations_executed: usize,
    pub early_stopped: bool,
    /// Evaluations that returned a non-finite value and were rolled back.
    pub nonfinite_events: u64,
    pub failed: bool,
}

/// Absolute difference between a found value and the true optimum.
///
/// Returns `None` if either input is not finite; callers record that as a
/// failed measurement.
pub fn error_rate(found: f64, true_optimum: f64) -> Option<f64> {
    if found.is_finite() && true_optimum.is_finite() {
        Some((found - true_optimum).abs())
    } else {
        None
    }
}

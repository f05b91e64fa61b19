//! Particle swarm optimisation with a star (global-best) topology.
//!
//! Velocities start at zero, inertia decays linearly from `w_max` to `w_min`
//! over the budget, and a coordinate that leaves the box is clamped to the
//! face with its velocity component zeroed.

use serde::{Deserialize, Serialize};

use super::rank_key;
use crate::common::{Objective, Outcome, RngStream, SearchSpace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PsoConfig {
    pub size: usize,
    pub iter: usize,
    /// Cognitive (personal-best) coefficient.
    pub c1: f64,
    /// Social (global-best) coefficient.
    pub c2: f64,
    pub w_min: f64,
    pub w_max: f64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        PsoConfig { size: 100, iter: 100, c1: 1.9, c2: 1.9, w_min: 0.4, w_max: 0.5 }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::config("size", "must be at least 1"));
        }
        if self.iter == 0 {
            return Err(Error::config("iter", "must be at least 1"));
        }
        for (key, v) in [("c1", self.c1), ("c2", self.c2), ("w_min", self.w_min), ("w_max", self.w_max)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(key, format!("must be positive and finite, got {v}")));
            }
        }
        if self.w_min > self.w_max {
            return Err(Error::config("w_min", format!("w_min {} exceeds w_max {}", self.w_min, self.w_max)));
        }
        Ok(())
    }

    /// Inertia weight at 0-based iteration `t`.
    pub fn inertia(&self, t: usize) -> f64 {
        if self.iter <= 1 {
            return self.w_max;
        }
        self.w_max - (self.w_max - self.w_min) * t as f64 / (self.iter - 1) as f64
    }
}

#[derive(Debug, Clone)]
pub struct Swarm {
    pub positions: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    pub best_positions: Vec<Vec<f64>>,
    pub best_values: Vec<f64>,
    pub global_best_position: Vec<f64>,
    pub global_best_value: f64,
    pub evaluations: u64,
}

impl Swarm {
    /// A swarm at rest at the given positions.
    pub fn from_positions<O: Objective + ?Sized>(positions: Vec<Vec<f64>>, objective: &O) -> Self {
        let values: Vec<f64> = positions.iter().map(|p| objective.evaluate(p)).collect();
        let dim = positions.first().map_or(0, Vec::len);
        let mut swarm = Swarm {
            velocities: vec![vec![0.0; dim]; positions.len()],
            best_positions: positions.clone(),
            evaluations: positions.len() as u64,
            best_values: values,
            positions,
            global_best_position: Vec::new(),
            global_best_value: f64::INFINITY,
        };
        swarm.refresh_global_best();
        swarm
    }

    fn refresh_global_best(&mut self) {
        for (p, &v) in self.best_positions.iter().zip(&self.best_values) {
            if rank_key(v) < self.global_best_value || self.global_best_position.is_empty() {
                self.global_best_value = rank_key(v);
                self.global_best_position.clone_from(p);
            }
        }
    }

    /// One synchronous update: all particles move against the global best
    /// of the previous step, then personal and global bests are refreshed.
    ///
    /// Draw order: particle by particle, coordinate by coordinate, `r1` then `r2`.
    pub fn step<O: Objective + ?Sized>(
        &mut self,
        inertia: f64,
        cfg: &PsoConfig,
        objective: &O,
        space: &SearchSpace,
        rng: &mut RngStream,
    ) {
        for i in 0..self.positions.len() {
            let (x, v) = (&mut self.positions[i], &mut self.velocities[i]);
            let pbest = &self.best_positions[i];
            for d in 0..x.len() {
                let r1 = rng.unit();
                let r2 = rng.unit();
                v[d] = inertia * v[d]
                    + cfg.c1 * r1 * (pbest[d] - x[d])
                    + cfg.c2 * r2 * (self.global_best_position[d] - x[d]);
                x[d] += v[d];
                if x[d] < space.lb() {
                    x[d] = space.lb();
                    v[d] = 0.0;
                } else if x[d] > space.ub() {
                    x[d] = space.ub();
                    v[d] = 0.0;
                }
            }
            let value = objective.evaluate(x);
            self.evaluations += 1;
            if rank_key(value) < rank_key(self.best_values[i]) {
                self.best_values[i] = value;
                self.best_positions[i].clone_from(x);
            }
        }
        self.refresh_global_best();
    }
}

pub fn run_pso<O: Objective + ?Sized>(
    objective: &O,
    space: &SearchSpace,
    cfg: &PsoConfig,
    rng: &mut RngStream,
) -> Result<Outcome> {
    cfg.validate()?;
    let positions = (0..cfg.size).map(|_| space.sample(rng)).collect();
    let mut swarm = Swarm::from_positions(positions, objective);
    for t in 0..cfg.iter {
        swarm.step(cfg.inertia(t), cfg, objective, space, rng);
    }
    Ok(Outcome {
        failed: !swarm.global_best_value.is_finite(),
        best_value: swarm.global_best_value,
        best_position: swarm.global_best_position,
        evaluations: swarm.evaluations,
        iterations_executed: cfg.iter,
        early_stopped: false,
        nonfinite_events: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::FunctionId;

    #[test]
    fn defaults_match_reference_values() {
        let cfg = PsoConfig::default();
        assert_eq!((cfg.c1, cfg.c2, cfg.w_min, cfg.w_max), (1.9, 1.9, 0.4, 0.5));
    }

    #[test]
    fn inertia_decays_linearly() {
        let cfg = PsoConfig { iter: 11, ..Default::default() };
        assert_eq!(cfg.inertia(0), 0.5);
        assert!((cfg.inertia(10) - 0.4).abs() < 1e-15);
        assert!((cfg.inertia(5) - 0.45).abs() < 1e-15);
        let single = PsoConfig { iter: 1, ..Default::default() };
        assert_eq!(single.inertia(0), 0.5);
    }

    #[test]
    fn validation() {
        assert!(PsoConfig { w_min: 0.6, ..Default::default() }.validate().is_err());
        assert!(PsoConfig { c1: 0.0, ..Default::default() }.validate().is_err());
        assert!(PsoConfig { size: 0, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn particle_at_optimum_stays_put() {
        let spec = FunctionId::Sphere.spec();
        let cfg = PsoConfig { size: 1, iter: 50, ..Default::default() };
        let mut swarm = Swarm::from_positions(vec![vec![0.0, 0.0]], &spec);
        let mut rng = RngStream::new(3);
        for t in 0..cfg.iter {
            swarm.step(cfg.inertia(t), &cfg, &spec, &spec.space, &mut rng);
            assert_eq!(swarm.global_best_value, 0.0);
            assert_eq!(swarm.positions[0], vec![0.0, 0.0]);
        }
    }

    #[test]
    fn clamping_zeroes_velocity() {
        let space = SearchSpace::new(1, -1.0, 1.0).unwrap();
        // optimum outside the box pulls every particle into the upper face
        let obj = |x: &[f64]| -x[0];
        let cfg = PsoConfig { size: 5, iter: 30, ..Default::default() };
        let mut rng = RngStream::new(1);
        let positions = (0..5).map(|_| space.sample(&mut rng)).collect();
        let mut swarm = Swarm::from_positions(positions, &obj);
        for t in 0..cfg.iter {
            swarm.step(cfg.inertia(t), &cfg, &obj, &space, &mut rng);
            for (x, v) in swarm.positions.iter().zip(&swarm.velocities) {
                assert!(space.contains(x));
                if x[0] == 1.0 {
                    assert_eq!(v[0], 0.0);
                }
            }
        }
        assert_eq!(swarm.global_best_value, -1.0);
    }

    #[test]
    fn deterministic_and_monotone() {
        let spec = FunctionId::Rastrigin.spec();
        let cfg = PsoConfig { size: 20, iter: 40, ..Default::default() };
        let a = run_pso(&spec, &spec.space, &cfg, &mut RngStream::new(5)).unwrap();
        let b = run_pso(&spec, &spec.space, &cfg, &mut RngStream::new(5)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.evaluations, 20 * 41);

        let positions = {
            let mut rng = RngStream::new(6);
            (0..20).map(|_| spec.space.sample(&mut rng)).collect()
        };
        let mut swarm = Swarm::from_positions(positions, &spec);
        let mut rng = RngStream::new(7);
        let mut last = swarm.global_best_value;
        for t in 0..cfg.iter {
            swarm.step(cfg.inertia(t), &cfg, &spec, &spec.space, &mut rng);
            assert!(swarm.global_best_value <= last);
            assert!(swarm.positions.iter().all(|p| spec.space.contains(p)));
            last = swarm.global_best_value;
        }
    }
}

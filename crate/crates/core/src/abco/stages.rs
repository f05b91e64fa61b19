use crate::common::{geometry_dist, k_nearest, repair_in_place, Bacterium, Objective, RngStream, SearchSpace};

use super::AbcoConfig;

/// Counters accumulated over a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub evaluations: u64,
    /// Evaluations that returned NaN/inf; the offending move was rolled back.
    pub nonfinite_events: u64,
    /// Directed steps taken after an above-threshold gain in exploration.
    pub directed_steps: u64,
    /// Exploitation moves toward a better neighbour.
    pub exploit_moves: u64,
    /// Exploitation passes skipped because the population had one member.
    pub skipped_exploit_passes: u64,
}

/// Mutable state of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunState {
    pub population: Vec<Bacterium>,
    pub iteration: usize,
    pub global_best_value: f64,
    pub global_best_position: Vec<f64>,
    pub early_stopped: bool,
    pub iterations_executed: usize,
    pub diagnostics: Diagnostics,
}

impl RunState {
    /// Wraps a seeded population; the global best starts at its best member.
    pub fn new(population: Vec<Bacterium>, cfg: &AbcoConfig) -> Self {
        let mut state = RunState {
            global_best_value: f64::NAN,
            global_best_position: Vec::new(),
            population,
            iteration: 0,
            early_stopped: false,
            iterations_executed: 0,
            diagnostics: Diagnostics::default(),
        };
        state.update_global_best(cfg);
        state
    }

    /// Folds the population's best personal best into the global best.
    pub fn update_global_best(&mut self, cfg: &AbcoConfig) {
        let best = self
            .population
            .iter()
            .filter(|b| b.best_solution.is_finite())
            .min_by(|a, b| cfg.mode.cmp_values(a.best_solution, b.best_solution));
        if let Some(b) = best {
            if self.global_best_value.is_nan() || cfg.mode.is_better(b.best_solution, self.global_best_value) {
                self.global_best_value = b.best_solution;
                self.global_best_position = b.best_position.clone();
            }
        }
    }

    fn evaluate<O: Objective + ?Sized>(&mut self, objective: &O, point: &[f64]) -> f64 {
        self.diagnostics.evaluations += 1;
        objective.evaluate(point)
    }
}

/// Records `solution` at the bacterium's current position as its personal
/// best if it improves on it. Returns the signed gain.
fn absorb(b: &mut Bacterium, cfg: &AbcoConfig) -> f64 {
    let gain = cfg.mode.improvement(b.best_solution, b.solution);
    if gain > 0.0 {
        b.best_solution = b.solution;
        b.best_position.clone_from(&b.position);
    }
    gain
}

/// Step of length `min(step, |target - current|)` from `current` toward `target`.
///
/// Never overshoots: when the target is within one step it is returned exactly.
pub fn move_toward(current: &[f64], target: &[f64], step: f64) -> Vec<f64> {
    let d = geometry_dist(current, target);
    if d == 0.0 {
        return current.to_vec();
    }
    if d <= step {
        return target.to_vec();
    }
    let scale = step / d;
    current.iter().zip(target).map(|(c, t)| c + scale * (t - c)).collect()
}

/// Displaces `b` by `N_s` along a random unit direction, then repairs bounds.
pub fn tumble_step(b: &Bacterium, cfg: &AbcoConfig, space: &SearchSpace, rng: &mut RngStream) -> Vec<f64> {
    let direction = rng.unit_vector(b.position.len());
    let mut next: Vec<f64> = b.position.iter().zip(&direction).map(|(x, d)| x + cfg.step_size * d).collect();
    repair_in_place(&mut next, space, rng);
    next
}

/// Exploration: `N_explor` passes of `N_tum` tumble rounds over the colony.
///
/// Per bacterium and round: tumble, evaluate, measure the gain against the
/// personal best *before* updating it, record a new personal best on any
/// positive gain, and when the gain exceeds `e` take one more step of length
/// `N_s` along the heading that produced it (a run in chemotaxis terms).
/// Moves whose evaluation is not finite are rolled back.
pub fn explore_stage<O: Objective + ?Sized>(
    state: &mut RunState,
    cfg: &AbcoConfig,
    objective: &O,
    space: &SearchSpace,
    rng: &mut RngStream,
) {
    for _ in 0..cfg.explore_steps {
        for _ in 0..cfg.tumble_steps {
            for i in 0..state.population.len() {
                let next = tumble_step(&state.population[i], cfg, space, rng);
                let value = state.evaluate(objective, &next);
                if !value.is_finite() {
                    state.diagnostics.nonfinite_events += 1;
                    continue;
                }
                let b = &mut state.population[i];
                let previous = std::mem::replace(&mut b.position, next);
                b.solution = value;
                let gain = absorb(b, cfg);
                if gain > cfg.threshold {
                    let heading: Vec<f64> = b.position.iter().zip(&previous).map(|(x, p)| 2.0 * x - p).collect();
                    let mut run = move_toward(&b.position, &heading, cfg.step_size);
                    repair_in_place(&mut run, space, rng);
                    state.diagnostics.directed_steps += 1;
                    let value = state.evaluate(objective, &run);
                    if !value.is_finite() {
                        state.diagnostics.nonfinite_events += 1;
                        continue;
                    }
                    let b = &mut state.population[i];
                    b.position = run;
                    b.solution = value;
                    absorb(b, cfg);
                }
            }
        }
    }
}

/// Exploitation: `N_explt` passes in which every bacterium steps toward the
/// best of its `k` nearest neighbours, provided that neighbour's current
/// solution is strictly better than its own.
pub fn exploit_stage<O: Objective + ?Sized>(
    state: &mut RunState,
    cfg: &AbcoConfig,
    objective: &O,
    space: &SearchSpace,
    rng: &mut RngStream,
) {
    for _ in 0..cfg.exploit_steps {
        if state.population.len() < 2 {
            state.diagnostics.skipped_exploit_passes += 1;
            continue;
        }
        for i in 0..state.population.len() {
            let neighbours =
                k_nearest(&state.population, i, cfg.neighbours).expect("population has at least two members");
            let leader = neighbours
                .iter()
                .map(|&(j, _)| j)
                .min_by(|&a, &b| cfg.mode.cmp_values(state.population[a].solution, state.population[b].solution))
                .expect("neighbourhood is non-empty");
            let pop = &state.population;
            if !cfg.mode.is_better(pop[leader].solution, pop[i].solution) {
                continue;
            }
            let mut next = move_toward(&pop[i].position, &pop[leader].position, cfg.step_size);
            repair_in_place(&mut next, space, rng);
            let value = state.evaluate(objective, &next);
            if !value.is_finite() {
                state.diagnostics.nonfinite_events += 1;
                continue;
            }
            state.diagnostics.exploit_moves += 1;
            let b = &mut state.population[i];
            b.position = next;
            b.solution = value;
            absorb(b, cfg);
        }
    }
}

/// Reproduction: keep the best `r = max(1, round(s * size))` bacteria and
/// regenerate the rest.
///
/// Replacement `i` is guided by survivor `i mod r`; it is placed at the
/// rank-weighted mean of the guide's `k` nearest survivors (weights
/// `k, k-1, ..., 1` normalised, best solution first). With a single survivor
/// replacements are seeded uniformly instead. After the stage the
/// population is ordered survivors first, best first.
pub fn reproduce_stage<O: Objective + ?Sized>(
    state: &mut RunState,
    cfg: &AbcoConfig,
    objective: &O,
    space: &SearchSpace,
    rng: &mut RngStream,
) {
    let size = state.population.len();
    if size == 0 {
        return;
    }
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| {
        cfg.mode.cmp_values(state.population[a].solution, state.population[b].solution).then(a.cmp(&b))
    });
    let retained = ((cfg.split * size as f64).round() as usize).clamp(1, size);
    let survivors: Vec<Bacterium> = order[..retained].iter().map(|&i| state.population[i].clone()).collect();

    let mut next = survivors.clone();
    for i in 0..size - retained {
        let guide = i % retained;
        let position = if retained == 1 {
            space.sample(rng)
        } else {
            let mut neighbours = k_nearest(&survivors, guide, cfg.neighbours).expect("at least two survivors");
            neighbours.sort_by(|a, b| {
                cfg.mode.cmp_values(survivors[a.0].solution, survivors[b.0].solution).then(a.0.cmp(&b.0))
            });
            let m = neighbours.len();
            let norm = (m * (m + 1) / 2) as f64;
            let mut pos = vec![0.0; space.dim()];
            for (rank, &(j, _)) in neighbours.iter().enumerate() {
                let w = (m - rank) as f64 / norm;
                for (p, x) in pos.iter_mut().zip(&survivors[j].position) {
                    *p += w * x;
                }
            }
            // convex combination; clamp only absorbs rounding at the faces
            pos.iter_mut().for_each(|x| *x = x.clamp(space.lb(), space.ub()));
            pos
        };
        let value = state.evaluate(objective, &position);
        if value.is_finite() {
            next.push(Bacterium::new(position, value));
        } else {
            state.diagnostics.nonfinite_events += 1;
            let mut copy = survivors[guide].clone();
            copy.previous_best_solution = copy.best_solution;
            next.push(copy);
        }
    }
    state.population = next;
}

/// Outcome of [`early_stop_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StopDecision {
    /// `iteration` is not a checkpoint.
    NotCheckpoint,
    /// Checkpoint passed; snapshots were refreshed.
    Continue {
        unchanged_percent: f64,
    },
    Stop {
        unchanged_percent: f64,
    },
}

impl StopDecision {
    pub fn should_stop(self) -> bool {
        matches!(self, StopDecision::Stop { .. })
    }
}

/// Stagnation test for the 1-based `iteration` just completed.
///
/// Checkpoints fall on positive multiples of the checkpoint period, except
/// the final iteration. At a checkpoint the share of bacteria whose personal
/// best equals the snapshot taken at the previous checkpoint is compared with
/// `unchanged_threshold`; strictly above it stops the run, otherwise every
/// snapshot is refreshed.
pub fn early_stop_check(state: &mut RunState, cfg: &AbcoConfig, iteration: usize) -> StopDecision {
    let period = cfg.checkpoint_period();
    if iteration == 0 || !iteration.is_multiple_of(period) || iteration >= cfg.iter || state.population.is_empty() {
        return StopDecision::NotCheckpoint;
    }
    let unchanged = state.population.iter().filter(|b| b.best_solution == b.previous_best_solution).count();
    let unchanged_percent = unchanged as f64 / state.population.len() as f64 * 100.0;
    if unchanged_percent > cfg.unchanged_threshold {
        return StopDecision::Stop { unchanged_percent };
    }
    for b in &mut state.population {
        b.previous_best_solution = b.best_solution;
    }
    StopDecision::Continue { unchanged_percent }
}

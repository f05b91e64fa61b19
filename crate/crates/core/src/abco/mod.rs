//! Adaptive bacterial colony optimisation.
//!
//! Each iteration runs three stages over the colony:
//!
//! 1. **explore** – random tumbles, with an extra directed step when a tumble
//!    improves the personal best by more than the threshold `e`;
//! 2. **exploit** – each bacterium steps toward the best of its `k` nearest
//!    neighbours;
//! 3. **reproduce** – the top fraction `s` survives and the remainder is
//!    regenerated from rank-weighted averages of surviving neighbours.
//!
//! Every `generation_gap` percent of the budget the run checks how many
//! personal bests have not moved since the previous checkpoint and stops
//! early once more than `unchanged_threshold` percent are frozen.
//!
//! Randomness is consumed in a fixed order (seeding, then per iteration
//! explore, exploit, reproduce) so a run is fully determined by its seed.

mod config;
mod stages;

pub use config::AbcoConfig;
pub use stages::{
    early_stop_check, exploit_stage, explore_stage, move_toward, reproduce_stage, tumble_step, Diagnostics, RunState,
    StopDecision,
};

use crate::common::{seed_population, Objective, Outcome, RngStream, SearchSpace};
use crate::error::Result;

/// Runs the optimiser to completion (budget exhausted or early stop).
pub fn run_abco<O: Objective + ?Sized>(
    objective: &O,
    space: &SearchSpace,
    cfg: &AbcoConfig,
    rng: &mut RngStream,
) -> Result<Outcome> {
    run_abco_observed(objective, space, cfg, rng, |_| {})
}

/// Like [`run_abco`], calling `observe` with the state after every iteration.
pub fn run_abco_observed<O, F>(
    objective: &O,
    space: &SearchSpace,
    cfg: &AbcoConfig,
    rng: &mut RngStream,
    mut observe: F,
) -> Result<Outcome>
where
    O: Objective + ?Sized,
    F: FnMut(&RunState),
{
    cfg.validate()?;
    let population = seed_population(space, cfg.size, objective, rng)?;
    let mut state = RunState::new(population, cfg);
    state.diagnostics.evaluations = cfg.size as u64;

    for iteration in 1..=cfg.iter {
        state.iteration = iteration;
        explore_stage(&mut state, cfg, objective, space, rng);
        exploit_stage(&mut state, cfg, objective, space, rng);
        // culling may drop the holder of the best personal best
        state.update_global_best(cfg);
        reproduce_stage(&mut state, cfg, objective, space, rng);
        state.update_global_best(cfg);
        state.iterations_executed = iteration;
        if early_stop_check(&mut state, cfg, iteration).should_stop() {
            state.early_stopped = true;
        }
        observe(&state);
        if state.early_stopped {
            break;
        }
    }

    Ok(Outcome {
        failed: !state.global_best_value.is_finite(),
        best_value: state.global_best_value,
        best_position: state.global_best_position,
        evaluations: state.diagnostics.evaluations,
        iterations_executed: state.iterations_executed,
        early_stopped: state.early_stopped,
        nonfinite_events: state.diagnostics.nonfinite_events,
    })
}

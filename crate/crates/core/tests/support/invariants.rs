//! Property suites shared by the `properties` tests and the acceptance run.

use proptest::prelude::*;
use proptest::test_runner::Config as ProptestConfig;
use swarm_opt::abco::{
    early_stop_check, exploit_stage, explore_stage, reproduce_stage, run_abco, run_abco_observed, AbcoConfig, RunState,
    StopDecision,
};
use swarm_opt::baselines::{run_acor, run_pso, AcorConfig, PsoConfig};
use swarm_opt::benchmarks::FunctionId;
use swarm_opt::{euclidean_distance, k_nearest, seed_population, OptimizationMode, RngStream, SearchSpace};

fn function() -> impl Strategy<Value = FunctionId> {
    (0..FunctionId::ALL.len()).prop_map(|i| FunctionId::ALL[i])
}

prop_compose! {
    fn abco_config()(
        size in 2usize..30,
        tumble in 1usize..3,
        explore in 1usize..3,
        exploit in 1usize..3,
        k in 1usize..8,
        split in 0.05f64..=1.0,
        threshold in prop_oneof![Just(0.0), 0.0f64..2.0],
        step in 0.05f64..3.0,
    ) -> AbcoConfig {
        AbcoConfig {
            size,
            iter: 10,
            step_size: step,
            explore_steps: explore,
            exploit_steps: exploit,
            tumble_steps: tumble,
            threshold,
            split,
            neighbours: k,
            ..AbcoConfig::default()
        }
    }
}

fn fresh_state(f: FunctionId, cfg: &AbcoConfig, rng: &mut RngStream) -> RunState {
    let spec = f.spec();
    let pop = seed_population(&spec.space, cfg.size, &spec, rng).unwrap();
    RunState::new(pop, cfg)
}

fn assert_in_bounds(state: &RunState, space: &SearchSpace, stage: &str) -> Result<(), TestCaseError> {
    for b in &state.population {
        prop_assert!(space.contains(&b.position), "{stage}: position {:?} escaped", b.position);
        prop_assert!(space.contains(&b.best_position), "{stage}: best position {:?} escaped", b.best_position);
    }
    Ok(())
}

pub fn stages_preserve_bounds(config: ProptestConfig) {
    proptest!(config, |(f in function(), cfg in abco_config(), seed in any::<u64>())| {
        let spec = f.spec();
        let mut rng = RngStream::new(seed);
        let mut state = fresh_state(f, &cfg, &mut rng);
        for _ in 0..3 {
            explore_stage(&mut state, &cfg, &spec, &spec.space, &mut rng);
            assert_in_bounds(&state, &spec.space, "explore")?;
            exploit_stage(&mut state, &cfg, &spec, &spec.space, &mut rng);
            assert_in_bounds(&state, &spec.space, "exploit")?;
            reproduce_stage(&mut state, &cfg, &spec, &spec.space, &mut rng);
            assert_in_bounds(&state, &spec.space, "reproduce")?;
        }
    });
}

pub fn personal_bests_never_worsen(config: ProptestConfig) {
    proptest!(config, |(f in function(), cfg in abco_config(), seed in any::<u64>(), max in any::<bool>())| {
        let spec = f.spec();
        let cfg = AbcoConfig { mode: if max { OptimizationMode::Max } else { OptimizationMode::Min }, ..cfg };
        let objective = |x: &[f64]| if max { -f.eval(x) } else { f.eval(x) };
        let mut rng = RngStream::new(seed);
        let pop = seed_population(&spec.space, cfg.size, &objective, &mut rng).unwrap();
        let mut state = RunState::new(pop, &cfg);
        for _ in 0..3 {
            let before: Vec<f64> = state.population.iter().map(|b| b.best_solution).collect();
            explore_stage(&mut state, &cfg, &objective, &spec.space, &mut rng);
            exploit_stage(&mut state, &cfg, &objective, &spec.space, &mut rng);
            for (b, old) in state.population.iter().zip(&before) {
                prop_assert!(!cfg.mode.is_better(*old, b.best_solution));
                prop_assert_eq!(objective(&b.best_position), b.best_solution);
                prop_assert!(!cfg.mode.is_better(b.solution, b.best_solution));
            }
            reproduce_stage(&mut state, &cfg, &objective, &spec.space, &mut rng);
        }
    });
}

pub fn global_best_is_monotone(config: ProptestConfig) {
    proptest!(config, |(f in function(), cfg in abco_config(), seed in any::<u64>())| {
        let spec = f.spec();
        let mut trace = Vec::new();
        let outcome = run_abco_observed(&spec, &spec.space, &cfg, &mut RngStream::new(seed), |s| {
            trace.push(s.global_best_value);
            let pop_best = s.population.iter().map(|b| b.best_solution).fold(f64::INFINITY, f64::min);
            assert!(s.global_best_value <= pop_best);
        })
        .unwrap();
        prop_assert!(trace.windows(2).all(|w| w[1] <= w[0]), "{:?}", trace);
        prop_assert_eq!(*trace.last().unwrap(), outcome.best_value);
        prop_assert!(outcome.best_value >= spec.known_minimum - 1e-9);
        prop_assert_eq!(f.eval(&outcome.best_position), outcome.best_value);
    });
}

pub fn reproduction_conserves_size_and_keeps_top_r(config: ProptestConfig) {
    proptest!(config, |(f in function(), cfg in abco_config(), seed in any::<u64>(), max in any::<bool>())| {
        let spec = f.spec();
        let cfg = AbcoConfig { mode: if max { OptimizationMode::Max } else { OptimizationMode::Min }, ..cfg };
        let mut rng = RngStream::new(seed);
        let mut state = fresh_state(f, &cfg, &mut rng);
        explore_stage(&mut state, &cfg, &spec, &spec.space, &mut rng);
        let before = state.population.clone();

        // oracle: full sort by current solution, ties by index
        let mut oracle: Vec<usize> = (0..before.len()).collect();
        oracle.sort_by(|&a, &b| {
            let (x, y) = (before[a].solution, before[b].solution);
            let ord = if max { y.total_cmp(&x) } else { x.total_cmp(&y) };
            ord.then(a.cmp(&b))
    });
    let r = ((cfg.split * cfg.size as f64).round() as usize).max(1).min(cfg.size);

    reproduce_stage(&mut state, &cfg, &spec, &spec.space, &mut rng);
    prop_assert_eq!(state.population.len(), before.len());
    for (slot, &i) in oracle[..r].iter().enumerate() {
        prop_assert_eq!(&state.population[slot], &before[i]);
    }
    });
}

pub fn k_nearest_matches_brute_force(config: ProptestConfig) {
    proptest!(config, |(pts in prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 3), 2..25), subject_seed in any::<usize>(), k in 1usize..30)| {
        let subject = subject_seed % pts.len();
        let got = k_nearest(&pts, subject, k).unwrap();
        let mut all: Vec<(usize, f64)> = (0..pts.len())
            .filter(|&j| j != subject)
            .map(|j| (j, euclidean_distance(&pts[subject], &pts[j]).unwrap()))
            .collect();
        all.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        all.truncate(k.min(pts.len() - 1));
        prop_assert_eq!(got, all);
    });
}

pub fn min_max_duality(config: ProptestConfig) {
    proptest!(config, |(f in function(), cfg in abco_config(), seed in any::<u64>())| {
        let spec = f.spec();
        let min = run_abco(&spec, &spec.space, &cfg, &mut RngStream::new(seed)).unwrap();
        let neg = |x: &[f64]| -f.eval(x);
        let max_cfg = AbcoConfig { mode: OptimizationMode::Max, ..cfg };
        let max = run_abco(&neg, &spec.space, &max_cfg, &mut RngStream::new(seed)).unwrap();
        prop_assert_eq!(max.best_value, -min.best_value);
        prop_assert_eq!(max.best_position, min.best_position);
        prop_assert_eq!(max.evaluations, min.evaluations);
        prop_assert_eq!(max.iterations_executed, min.iterations_executed);
    });
}

pub fn early_stop_only_at_checkpoints(config: ProptestConfig) {
    proptest!(config, |(f in function(), cfg in abco_config(), seed in any::<u64>(), iter in 2usize..60, gap in 1.0f64..60.0, threshold in 1.0f64..100.0)| {
        let spec = f.spec();
        let cfg = AbcoConfig { iter, generation_gap: gap, unchanged_threshold: threshold, ..cfg };
        let period = cfg.checkpoint_period();
        let mut rng = RngStream::new(seed);
        let mut state = fresh_state(f, &cfg, &mut rng);
        for t in 1..=cfg.iter {
            explore_stage(&mut state, &cfg, &spec, &spec.space, &mut rng);
            exploit_stage(&mut state, &cfg, &spec, &spec.space, &mut rng);
            reproduce_stage(&mut state, &cfg, &spec, &spec.space, &mut rng);
            let unchanged = state.population.iter().filter(|b| b.best_solution == b.previous_best_solution).count();
            let pct = 100.0 * unchanged as f64 / state.population.len() as f64;
            match early_stop_check(&mut state, &cfg, t) {
                StopDecision::NotCheckpoint => prop_assert!(t % period != 0 || t == cfg.iter),
                StopDecision::Continue { unchanged_percent } => {
                    prop_assert!(t % period == 0 && t < cfg.iter);
                    prop_assert!((unchanged_percent - pct).abs() < 1e-9);
                    prop_assert!(unchanged_percent <= cfg.unchanged_threshold);
                    prop_assert!(state.population.iter().all(|b| b.previous_best_solution == b.best_solution));
                }
                StopDecision::Stop { unchanged_percent } => {
                    prop_assert!(t % period == 0 && t < cfg.iter);
                    prop_assert!(unchanged_percent > cfg.unchanged_threshold);
                    break;
                }
            }
        }
        let outcome = run_abco(&spec, &spec.space, &cfg, &mut RngStream::new(seed)).unwrap();
        if outcome.early_stopped {
            prop_assert_eq!(outcome.iterations_executed % period, 0);
            prop_assert!(outcome.iterations_executed < cfg.iter);
        } else {
            prop_assert_eq!(outcome.iterations_executed, cfg.iter);
        }
    });
}

// One tumble per bacterium from a fixed start draws the same directions
// whatever e is, so the number of directed steps can only fall as e grows.
pub fn directed_steps_fall_as_threshold_rises(config: ProptestConfig) {
    proptest!(config, |(seed in any::<u64>(), e1 in 0.0f64..5.0, e2 in 0.0f64..5.0)| {
        let (lo, hi) = (e1.min(e2), e1.max(e2));
        let space = SearchSpace::new(2, -1e3, 1e3).unwrap();
        let objective = |x: &[f64]| x[0] * x[0] + 3.0 * x[1] * x[1];
        let mut rng = RngStream::new(seed);
        let start: Vec<_> = (0..20)
            .map(|_| {
                let p = vec![rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0)];
                let v = objective(&p);
                swarm_opt::Bacterium::new(p, v)
            })
            .collect();
        let count = |e: f64| {
            let cfg = AbcoConfig { size: 20, explore_steps: 1, tumble_steps: 1, threshold: e, step_size: 0.5, ..AbcoConfig::default() };
            let mut state = RunState::new(start.clone(), &cfg);
            explore_stage(&mut state, &cfg, &objective, &space, &mut RngStream::new(seed ^ 1));
            state.diagnostics.directed_steps
        };
        prop_assert!(count(lo) >= count(hi));
    });
}

pub fn baselines_stay_in_bounds(config: ProptestConfig) {
    proptest!(config, |(f in function(), size in 2usize..20, iter in 1usize..15, seed in any::<u64>())| {
        let spec = f.spec();
        let pso = run_pso(&spec, &spec.space, &PsoConfig { size, iter, ..PsoConfig::default() }, &mut RngStream::new(seed)).unwrap();
        prop_assert!(spec.space.contains(&pso.best_position));
        prop_assert_eq!(pso.evaluations, (size * (iter + 1)) as u64);
        let acor = run_acor(&spec, &spec.space, &AcorConfig { iter, ..AcorConfig::for_size(size) }, &mut RngStream::new(seed)).unwrap();
        prop_assert!(spec.space.contains(&acor.best_position));
        for o in [&pso, &acor] {
            prop_assert!(o.best_value >= spec.known_minimum - 1e-9);
            prop_assert_eq!(f.eval(&o.best_position), o.best_value);
        }
    });
}

/// Every invariant suite, by name.
pub type Suite = fn(ProptestConfig);

pub const SUITES: &[(&str, Suite)] = &[
    ("stages_preserve_bounds", stages_preserve_bounds),
    ("personal_bests_never_worsen", personal_bests_never_worsen),
    ("global_best_is_monotone", global_best_is_monotone),
    ("reproduction_conserves_size_and_keeps_top_r", reproduction_conserves_size_and_keeps_top_r),
    ("k_nearest_matches_brute_force", k_nearest_matches_brute_force),
    ("min_max_duality", min_max_duality),
    ("early_stop_only_at_checkpoints", early_stop_only_at_checkpoints),
    ("directed_steps_fall_as_threshold_rises", directed_steps_fall_as_threshold_rises),
    ("baselines_stay_in_bounds", baselines_stay_in_bounds),
];

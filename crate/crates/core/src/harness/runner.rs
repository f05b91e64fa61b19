//! Seeded multi-run execution.

use std::time::Instant;

use rayon::prelude::*;

use super::config::{AlgorithmId, ExperimentConfig};
use crate::abco::{run_abco, AbcoConfig};
use crate::baselines::{run_acor, run_pso, AcorConfig, PsoConfig};
use crate::benchmarks::FunctionId;
use crate::common::{derive_seed, error_rate, Outcome, RngStream};
use crate::error::{Error, Result};

pub const THREADS_ENV: &str = "SWARM_OPT_THREADS";

/// One seeded run. A failed run has `failed == true` and NaN in
/// `best_value` and `error`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub experiment_id: String,
    pub function: FunctionId,
    pub algorithm: AlgorithmId,
    pub pop_size: usize,
    pub run_index: usize,
    pub seed: u64,
    pub best_value: f64,
    pub true_minimum: f64,
    pub error: f64,
    pub evaluations: u64,
    pub iterations_executed: usize,
    pub early_stopped: bool,
    pub runtime_seconds: f64,
    pub failed: bool,
}

/// Resolved parameters for one algorithm on one function.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmParams {
    Abco(AbcoConfig),
    Pso(PsoConfig),
    Aco(AcorConfig),
}

impl AlgorithmParams {
    pub fn for_cell(cfg: &ExperimentConfig, function: FunctionId, algorithm: AlgorithmId) -> Self {
        match algorithm {
            AlgorithmId::Abco => AlgorithmParams::Abco(cfg.abco[&function].clone()),
            AlgorithmId::Pso => AlgorithmParams::Pso(cfg.pso.clone()),
            AlgorithmId::Aco => AlgorithmParams::Aco(cfg.aco.clone()),
        }
    }

    pub fn algorithm(&self) -> AlgorithmId {
        match self {
            AlgorithmParams::Abco(_) => AlgorithmId::Abco,
            AlgorithmParams::Pso(_) => AlgorithmId::Pso,
            AlgorithmParams::Aco(_) => AlgorithmId::Aco,
        }
    }

    pub fn pop_size(&self) -> usize {
        match self {
            AlgorithmParams::Abco(c) => c.size,
            AlgorithmParams::Pso(c) => c.size,
            AlgorithmParams::Aco(c) => c.size,
        }
    }
}

/// Runs one optimiser on the 2-D benchmark and times only the optimiser call.
pub fn run_single(function: FunctionId, params: &AlgorithmParams, seed: u64) -> (Result<Outcome>, f64) {
    let spec = function.spec();
    let mut rng = RngStream::new(seed);
    let start = Instant::now();
    let outcome = match params {
        AlgorithmParams::Abco(c) => run_abco(&spec, &spec.space, c, &mut rng),
        AlgorithmParams::Pso(c) => run_pso(&spec, &spec.space, c, &mut rng),
        AlgorithmParams::Aco(c) => run_acor(&spec, &spec.space, c, &mut rng),
    };
    (outcome, start.elapsed().as_secs_f64())
}

struct Cell {
    function: FunctionId,
    params: AlgorithmParams,
    run_index: usize,
    seed: u64,
}

fn record_for(experiment_id: &str, cell: &Cell) -> RunRecord {
    let (outcome, runtime_seconds) = run_single(cell.function, &cell.params, cell.seed);
    let true_minimum = cell.function.spec().known_minimum;
    let mut record = RunRecord {
        experiment_id: experiment_id.to_string(),
        function: cell.function,
        algorithm: cell.params.algorithm(),
        pop_size: cell.params.pop_size(),
        run_index: cell.run_index,
        seed: cell.seed,
        best_value: f64::NAN,
        true_minimum,
        error: f64::NAN,
        evaluations: 0,
        iterations_executed: 0,
        early_stopped: false,
        runtime_seconds,
        failed: true,
    };
    if let Ok(o) = outcome {
        record.evaluations = o.evaluations;
        record.iterations_executed = o.iterations_executed;
        record.early_stopped = o.early_stopped;
        if let (false, Some(err)) = (o.failed, error_rate(o.best_value, true_minimum)) {
            record.best_value = o.best_value;
            // |−0.0| prints as "0"; keep errors non-negative in every rendering.
            record.error = err + 0.0;
            record.failed = false;
        }
    }
    record
}

/// Worker count from `SWARM_OPT_THREADS`; `0` or unset means automatic.
pub fn worker_threads() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::config(THREADS_ENV, format!("expected a non-negative integer, got `{v}`"))),
    }
}

/// Runs every (function, algorithm, run) cell. Records come back in
/// function-major, then algorithm, then run-index order whatever the
/// worker count.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    run_experiment_with_threads(cfg, worker_threads()?)
}

pub fn run_experiment_with_threads(cfg: &ExperimentConfig, threads: usize) -> Result<Vec<RunRecord>> {
    let mut cells = Vec::with_capacity(cfg.functions.len() * cfg.algorithms.len() * cfg.runs_per_cell);
    for &function in &cfg.functions {
        for &algorithm in &cfg.algorithms {
            let params = AlgorithmParams::for_cell(cfg, function, algorithm);
            for run_index in 0..cfg.runs_per_cell {
                let seed = derive_seed(cfg.base_seed, function.index(), algorithm.index(), run_index as u64);
                cells.push(Cell { function, params: params.clone(), run_index, seed });
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::config(THREADS_ENV, e.to_string()))?;
    Ok(pool.install(|| cells.par_iter().map(|c| record_for(&cfg.experiment_id, c)).collect()))
}

//! Best/worst/mean/std aggregation over runs.

use super::config::AlgorithmId;
use super::runner::RunRecord;
use crate::benchmarks::FunctionId;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatsSummary {
    pub best: f64,
    pub worst: f64,
    pub mean: f64,
    /// Population standard deviation (divides by `n`).
    pub std: f64,
    pub n: usize,
}

pub fn aggregate_stats(values: &[f64]) -> Result<StatsSummary> {
    if values.is_empty() {
        return Err(Error::contract("cannot aggregate an empty sample"));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::contract(format!("cannot aggregate non-finite value {v}")));
    }
    let n = values.len();
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let worst = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = (values.iter().sum::<f64>() / n as f64).clamp(best, worst);
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
    Ok(StatsSummary { best, worst, mean, std: var.sqrt(), n })
}

/// Aggregates for one (function, algorithm) cell. Failed runs are counted
/// but excluded from the statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub function: FunctionId,
    pub algorithm: AlgorithmId,
    pub pop_size: usize,
    pub runs: usize,
    pub failed_runs: usize,
    pub error: Option<StatsSummary>,
    pub runtime: Option<StatsSummary>,
}

/// One summary per cell, in order of first appearance.
pub fn summarize(records: &[RunRecord]) -> Vec<CellSummary> {
    let mut keys: Vec<(FunctionId, AlgorithmId, usize)> = Vec::new();
    for r in records {
        let key = (r.function, r.algorithm, r.pop_size);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(function, algorithm, pop_size)| {
            let cell: Vec<&RunRecord> = records
                .iter()
                .filter(|r| (r.function, r.algorithm, r.pop_size) == (function, algorithm, pop_size))
                .collect();
            let ok: Vec<&&RunRecord> = cell.iter().filter(|r| !r.failed).collect();
            let errors: Vec<f64> = ok.iter().map(|r| r.error).collect();
            let runtimes: Vec<f64> = ok.iter().map(|r| r.runtime_seconds).collect();
            CellSummary {
                function,
                algorithm,
                pop_size,
                runs: cell.len(),
                failed_runs: cell.len() - ok.len(),
                error: aggregate_stats(&errors).ok(),
                runtime: aggregate_stats(&runtimes).ok(),
            }
        })
        .collect()
}

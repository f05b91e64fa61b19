//! CSV records, summary files and the text tables.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use super::config::AlgorithmId;
use super::runner::RunRecord;
use super::stats::{summarize, CellSummary, StatsSummary};
use crate::benchmarks::FunctionId;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 13] = [
    "experiment_id",
    "function",
    "algorithm",
    "pop_size",
    "run_index",
    "seed",
    "best_value",
    "true_minimum",
    "error",
    "evaluations",
    "iterations_executed",
    "early_stopped",
    "runtime_seconds",
];

pub const SUMMARY_HEADER: [&str; 10] =
    ["function", "algorithm", "pop_size", "runs", "failed_runs", "best", "worst", "mean", "std", "n"];

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io { path: path.to_path_buf(), source }
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| io_err(path, e))
}

/// Shortest text that parses back to the same bits; exponent form outside
/// `[1e-4, 1e16)` so tiny errors stay readable.
pub fn fmt_float(v: f64) -> String {
    if v == 0.0 || !v.is_finite() || (1e-4..1e16).contains(&v.abs()) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

fn record_fields(r: &RunRecord) -> [String; 13] {
    [
        r.experiment_id.clone(),
        r.function.to_string(),
        r.algorithm.to_string(),
        r.pop_size.to_string(),
        r.run_index.to_string(),
        r.seed.to_string(),
        fmt_float(r.best_value),
        fmt_float(r.true_minimum),
        fmt_float(r.error),
        r.evaluations.to_string(),
        r.iterations_executed.to_string(),
        r.early_stopped.to_string(),
        fmt_float(r.runtime_seconds),
    ]
}

pub fn write_records<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(record_fields(r))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_results(records: &[RunRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write_records(records, create(path)?)
}

fn field<T: FromStr>(row: &csv::StringRecord, idx: usize, line: u64) -> Result<T> {
    let raw = row.get(idx).unwrap_or("");
    raw.parse().map_err(|_| Error::config(format!("line {line}: {}", CSV_HEADER[idx]), format!("cannot parse `{raw}`")))
}

/// Parses records written by [`write_records`]. A row whose best value is
/// not finite is read back as a failed run.
pub fn read_records<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::config("header", format!("expected `{}`", CSV_HEADER.join(","))));
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let best_value: f64 = field(&row, 6, line)?;
        let function: FunctionId =
            row[1].parse().map_err(|e: Error| Error::config(format!("line {line}: function"), e.to_string()))?;
        let algorithm: AlgorithmId =
            row[2].parse().map_err(|e: Error| Error::config(format!("line {line}: algorithm"), e.to_string()))?;
        out.push(RunRecord {
            experiment_id: row[0].to_string(),
            function,
            algorithm,
            pop_size: field(&row, 3, line)?,
            run_index: field(&row, 4, line)?,
            seed: field(&row, 5, line)?,
            best_value,
            true_minimum: field(&row, 7, line)?,
            error: field(&row, 8, line)?,
            evaluations: field(&row, 9, line)?,
            iterations_executed: field(&row, 10, line)?,
            early_stopped: field(&row, 11, line)?,
            runtime_seconds: field(&row, 12, line)?,
            failed: !best_value.is_finite(),
        });
    }
    Ok(out)
}

pub fn read_results(path: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    let path = path.as_ref();
    read_records(File::open(path).map_err(|e| io_err(path, e))?)
}

/// Writes one summary row per cell for the chosen metric.
pub fn write_summary(summaries: &[CellSummary], metric: Metric, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(SUMMARY_HEADER)?;
    for s in summaries {
        let stats = metric(s);
        let num = |f: fn(&StatsSummary) -> f64| stats.map_or_else(|| "NaN".to_string(), |st| fmt_float(f(&st)));
        w.write_record([
            s.function.to_string(),
            s.algorithm.to_string(),
            s.pop_size.to_string(),
            s.runs.to_string(),
            s.failed_runs.to_string(),
            num(|s| s.best),
            num(|s| s.worst),
            num(|s| s.mean),
            num(|s| s.std),
            stats.map_or(0, |s| s.n).to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

type Stat = fn(&StatsSummary) -> f64;
/// Picks the error or runtime summary out of a cell.
pub type Metric = fn(&CellSummary) -> Option<StatsSummary>;

const STATS: [(&str, Stat); 4] =
    [("best", |s| s.best), ("worst", |s| s.worst), ("mean", |s| s.mean), ("std", |s| s.std)];

fn fmt_value(v: Option<f64>) -> String {
    match v {
        Some(0.0) => "0".to_string(),
        Some(v) if (1e-3..1e4).contains(&v.abs()) => format!("{v:.5}"),
        Some(v) => format!("{v:.4e}"),
        None => "-".to_string(),
    }
}

/// Per function: error and runtime × best/worst/mean/std rows, one column
/// per algorithm. `*` marks the lowest value in each row.
pub fn render_table(records: &[RunRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::contract("no records to tabulate"));
    }
    let summaries = summarize(records);
    let mut functions: Vec<FunctionId> = Vec::new();
    for s in &summaries {
        if !functions.contains(&s.function) {
            functions.push(s.function);
        }
    }

    let mut out = String::new();
    for f in functions {
        let cols: Vec<&CellSummary> = summaries.iter().filter(|s| s.function == f).collect();
        let headers: Vec<String> = cols.iter().map(|c| format!("{} (n={})", c.algorithm, c.pop_size)).collect();
        let width = headers.iter().map(String::len).max().unwrap_or(0).max(13);

        writeln!(out, "{f}").unwrap();
        write!(out, "  {:<8}{:<7}", "metric", "stat").unwrap();
        for h in &headers {
            write!(out, "{h:>width$}").unwrap();
        }
        out.push('\n');
        let metrics: [(&str, Metric); 2] = [("error", |c| c.error), ("runtime", |c| c.runtime)];
        for (metric, get) in metrics {
            for (stat, pick) in STATS {
                let values: Vec<Option<f64>> = cols.iter().map(|c| get(c).map(|s| pick(&s))).collect();
                let lowest = values.iter().flatten().copied().fold(f64::INFINITY, f64::min);
                write!(out, "  {metric:<8}{stat:<7}").unwrap();
                for v in &values {
                    let mark = if cols.len() > 1 && *v == Some(lowest) { "*" } else { " " };
                    write!(out, "{:>w$}{mark}", fmt_value(*v), w = width - 1).unwrap();
                }
                out.push('\n');
            }
        }
        let failed: usize = cols.iter().map(|c| c.failed_runs).sum();
        if failed > 0 {
            writeln!(out, "  ({failed} failed run(s) excluded)").unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

//! `swarm-opt` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use super::config::{load_config, parse_config, AlgorithmId, ExperimentConfig, DEFAULT_ITER, DEFAULT_RUNS};
use super::output::{read_results, render_table, write_records, write_results, write_summary};
use super::runner::run_experiment;
use super::stats::summarize;
use crate::benchmarks::FunctionId;
use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "swarm-opt", version, about = "Seeded ABCO / PSO / ACO_R benchmark experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List benchmark functions and algorithms.
    List,
    /// Run one algorithm on one function several times.
    Run {
        #[arg(long)]
        algorithm: String,
        #[arg(long)]
        function: String,
        /// Population size (defaults to the preset, 100).
        #[arg(long)]
        pop_size: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ITER)]
        iters: usize,
        #[arg(long, default_value_t = DEFAULT_RUNS)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Records CSV; printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override a preset field, e.g. `--param e=0.1` (repeatable).
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
    /// Run a full experiment from a config file or a bundled name
    /// (experiment1, experiment2, experiment3).
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Print the summary table for a records CSV.
    Table {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn param_value(raw: &str) -> Value {
    serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()))
}

/// Builds a single-cell experiment config, reusing the config validation.
#[allow(clippy::too_many_arguments)]
fn single_cell_config(
    algorithm: &str,
    function: &str,
    pop_size: Option<usize>,
    iters: usize,
    runs: usize,
    seed: u64,
    params: &[String],
) -> Result<ExperimentConfig> {
    let algorithm: AlgorithmId = algorithm.parse()?;
    let function: FunctionId = function.parse()?;
    let mut block = Map::new();
    for p in params {
        let (key, value) =
            p.split_once('=').ok_or_else(|| Error::config("--param", format!("expected KEY=VALUE, got `{p}`")))?;
        block.insert(key.trim().to_string(), param_value(value.trim()));
    }
    if let Some(size) = pop_size {
        block.insert("size".into(), json!(size));
    }
    let block = Value::Object(block);
    let mut raw = json!({
        "experiment_id": "run",
        "base_seed": seed,
        "iter": iters,
        "runs_per_cell": runs,
        "functions": [function.as_str()],
        "algorithms": [algorithm.as_str()],
    });
    raw[algorithm.as_str()] = match algorithm {
        AlgorithmId::Abco => json!({ function.as_str(): block }),
        _ => block,
    };
    parse_config(&raw.to_string(), "--param")
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Io { path: PathBuf::from("<stdout>"), source: e };
    match cli.command {
        Command::List => {
            writeln!(stdout, "functions:").map_err(io)?;
            for f in FunctionId::ALL {
                let spec = f.spec();
                writeln!(
                    stdout,
                    "  {:<16} [{}, {}]  min {}",
                    f.as_str(),
                    spec.space.lb(),
                    spec.space.ub(),
                    spec.known_minimum
                )
                .map_err(io)?;
            }
            writeln!(stdout, "algorithms:").map_err(io)?;
            for a in AlgorithmId::ALL {
                writeln!(stdout, "  {a}").map_err(io)?;
            }
        }
        Command::Run { algorithm, function, pop_size, iters, runs, seed, out, params } => {
            let cfg = single_cell_config(&algorithm, &function, pop_size, iters, runs, seed, &params)?;
            let records = run_experiment(&cfg)?;
            match out {
                Some(path) => {
                    write_results(&records, &path)?;
                    write!(stdout, "{}", render_table(&records)?).map_err(io)?;
                }
                None => write_records(&records, &mut *stdout)?,
            }
        }
        Command::Experiment { config, out_dir } => {
            let cfg = load_config(&config)?;
            std::fs::create_dir_all(&out_dir).map_err(|e| Error::Io { path: out_dir.clone(), source: e })?;
            let records = run_experiment(&cfg)?;
            let id = &cfg.experiment_id;
            let summaries = summarize(&records);
            write_results(&records, out_dir.join(format!("{id}_records.csv")))?;
            write_summary(&summaries, |s| s.error, out_dir.join(format!("{id}_error_summary.csv")))?;
            write_summary(&summaries, |s| s.runtime, out_dir.join(format!("{id}_runtime_summary.csv")))?;
            write!(stdout, "{}", render_table(&records)?).map_err(io)?;
        }
        Command::Table { input } => {
            let records = read_results(&input)?;
            write!(stdout, "{}", render_table(&records)?).map_err(io)?;
        }
    }
    Ok(())
}

/// Parses `argv` (including the program name) and runs the command,
/// writing normal output to `stdout` and diagnostics to `stderr`.
pub fn run_cli<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

/// Entry point for the binary.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_cli(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

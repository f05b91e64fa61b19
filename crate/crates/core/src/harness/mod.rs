//! Experiment orchestration: configs, seeded runs, statistics, output and the CLI.

pub mod cli;
pub mod config;
pub mod output;
pub mod runner;
pub mod stats;

pub use cli::{cli_main, run_cli};
pub use config::{load_config, parse_config, AlgorithmId, ExperimentConfig};
pub use output::{read_results, render_table, write_results, CSV_HEADER};
pub use runner::{run_experiment, run_single, AlgorithmParams, RunRecord};
pub use stats::{aggregate_stats, summarize, CellSummary, StatsSummary};

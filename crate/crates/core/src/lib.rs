//! Population-based optimisers for continuous black-box minimisation.
//!
//! The crate ships three optimisers that share one set of primitives:
//!
//! * [`abco`]: adaptive bacterial colony optimisation (explore, exploit,
//!   reproduce, with generation-gap early stopping),
//! * [`baselines::pso`]: global-best particle swarm optimisation,
//! * [`baselines::acor`]: continuous ant-colony optimisation over a ranked
//!   solution archive.
//!
//! [`benchmarks`] holds the ten standard 2-D test functions and [`harness`]
//! runs seeded, reproducible experiments over them and writes CSV/text
//! summaries.

pub mod abco;
pub mod baselines;
pub mod benchmarks;
pub mod common;
pub mod error;
pub mod harness;

pub use common::{
    error_rate, euclidean_distance, k_nearest, repair_bounds, seed_population, Bacterium, Objective, OptimizationMode,
    Outcome, RngStream, SearchSpace,
};
pub use error::{Error, Result};

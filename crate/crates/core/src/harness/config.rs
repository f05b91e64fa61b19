//! Experiment configuration: JSON schema, bundled presets and validation.
//!
//! Resolution order for each ABCO cell: built-in defaults, then the bundled
//! per-function preset, then the config's `abco.<function>` block, then
//! `population_overrides.<function>` for the population size. `iter` always
//! comes from the top level. PSO and ACO blocks merge over their bundled
//! presets the same way.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::abco::AbcoConfig;
use crate::baselines::acor::default_sample_count;
use crate::baselines::{AcorConfig, PsoConfig};
use crate::benchmarks::FunctionId;
use crate::error::{Error, Result};

pub const DEFAULT_ITER: usize = 100;
pub const DEFAULT_POPULATION: usize = 100;
pub const DEFAULT_RUNS: usize = 50;

const BUNDLED_EXPERIMENTS: [(&str, &str); 3] = [
    ("experiment1", include_str!("../../configs/experiment1.json")),
    ("experiment2", include_str!("../../configs/experiment2.json")),
    ("experiment3", include_str!("../../configs/experiment3.json")),
];

const PSO_PRESET: &str = include_str!("../../presets/pso.json");
const ACO_PRESET: &str = include_str!("../../presets/aco.json");

fn abco_preset_source(f: FunctionId) -> &'static str {
    match f {
        FunctionId::Ackley => include_str!("../../presets/abco/ackley.json"),
        FunctionId::Schaffer => include_str!("../../presets/abco/schaffer.json"),
        FunctionId::Rastrigin => include_str!("../../presets/abco/rastrigin.json"),
        FunctionId::HoldersTable => include_str!("../../presets/abco/holders_table.json"),
        FunctionId::Rosenbrock => include_str!("../../presets/abco/rosenbrock.json"),
        FunctionId::Sphere => include_str!("../../presets/abco/sphere.json"),
        FunctionId::Booth => include_str!("../../presets/abco/booth.json"),
        FunctionId::Easom => include_str!("../../presets/abco/easom.json"),
        FunctionId::Himmelblau => include_str!("../../presets/abco/himmelblau.json"),
        FunctionId::GoldsteinPrice => include_str!("../../presets/abco/goldstein_price.json"),
    }
}

/// Names accepted by [`load_config`] without a file on disk.
pub fn bundled_experiments() -> Vec<&'static str> {
    BUNDLED_EXPERIMENTS.iter().map(|(name, _)| *name).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmId {
    Abco,
    Pso,
    Aco,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 3] = [AlgorithmId::Abco, AlgorithmId::Pso, AlgorithmId::Aco];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::Abco => "abco",
            AlgorithmId::Pso => "pso",
            AlgorithmId::Aco => "aco",
        }
    }

    /// Algorithm component of derived seeds.
    pub fn index(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmId::ALL.into_iter().find(|a| a.as_str() == s).ok_or_else(|| Error::UnknownAlgorithm {
            id: s.to_string(),
            valid: AlgorithmId::ALL.map(AlgorithmId::as_str).join(", "),
        })
    }
}

/// Partial ABCO block as written in JSON; absent keys inherit.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbcoOverrides {
    pub N_s: Option<f64>,
    pub N_explor: Option<usize>,
    pub N_explt: Option<usize>,
    pub N_tum: Option<usize>,
    pub e: Option<f64>,
    pub s: Option<f64>,
    pub k: Option<usize>,
    pub generation_gap: Option<f64>,
    pub unchanged_threshold: Option<f64>,
    pub size: Option<usize>,
}

impl AbcoOverrides {
    fn apply(&self, cfg: &mut AbcoConfig) {
        macro_rules! set {
            ($($src:ident => $dst:ident),*) => {$(
                if let Some(v) = self.$src {
                    cfg.$dst = v;
                }
            )*};
        }
        set!(N_s => step_size, N_explor => explore_steps, N_explt => exploit_steps, N_tum => tumble_steps,
             e => threshold, s => split, k => neighbours, generation_gap => generation_gap,
             unchanged_threshold => unchanged_threshold, size => size);
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsoOverrides {
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub w_min: Option<f64>,
    pub w_max: Option<f64>,
    pub size: Option<usize>,
}

impl PsoOverrides {
    fn apply(&self, cfg: &mut PsoConfig) {
        cfg.c1 = self.c1.unwrap_or(cfg.c1);
        cfg.c2 = self.c2.unwrap_or(cfg.c2);
        cfg.w_min = self.w_min.unwrap_or(cfg.w_min);
        cfg.w_max = self.w_max.unwrap_or(cfg.w_max);
        cfg.size = self.size.unwrap_or(cfg.size);
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcoOverrides {
    pub sample_count: Option<usize>,
    pub intent_factor: Option<f64>,
    pub zeta: Option<f64>,
    pub size: Option<usize>,
}

impl AcoOverrides {
    /// `sample_count` follows the archive size unless set explicitly.
    fn apply(&self, cfg: &mut AcorConfig) {
        if let Some(size) = self.size {
            cfg.size = size;
            cfg.sample_count = default_sample_count(size);
        }
        cfg.sample_count = self.sample_count.unwrap_or(cfg.sample_count);
        cfg.intent_factor = self.intent_factor.unwrap_or(cfg.intent_factor);
        cfg.zeta = self.zeta.unwrap_or(cfg.zeta);
    }
}

/// The file as written, before defaults and validation.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawExperimentConfig {
    pub experiment_id: String,
    pub base_seed: Option<u64>,
    pub iter: Option<usize>,
    pub runs_per_cell: Option<usize>,
    pub functions: Vec<String>,
    pub algorithms: Vec<String>,
    #[serde(default)]
    pub abco: BTreeMap<String, AbcoOverrides>,
    #[serde(default)]
    pub pso: PsoOverrides,
    #[serde(default)]
    pub aco: AcoOverrides,
    #[serde(default)]
    pub population_overrides: BTreeMap<String, usize>,
}

/// A validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment_id: String,
    pub base_seed: u64,
    pub iter: usize,
    pub runs_per_cell: usize,
    pub functions: Vec<FunctionId>,
    pub algorithms: Vec<AlgorithmId>,
    /// Fully resolved ABCO settings for every listed function.
    pub abco: BTreeMap<FunctionId, AbcoConfig>,
    pub pso: PsoConfig,
    pub aco: AcorConfig,
    /// ABCO population size per function, overriding `abco.<function>.size`.
    pub population_overrides: BTreeMap<FunctionId, usize>,
}

fn parse_json<T: serde::de::DeserializeOwned>(source: &str, origin: &str) -> Result<T> {
    serde_json::from_str(source).map_err(|e| Error::Json { path: origin.to_string(), source: e })
}

/// Bundled preset for `function`, on top of the built-in defaults.
pub fn abco_preset(function: FunctionId) -> AbcoConfig {
    let preset: AbcoOverrides =
        parse_json(abco_preset_source(function), function.as_str()).expect("bundled presets are valid");
    let mut cfg = AbcoConfig::default();
    preset.apply(&mut cfg);
    cfg
}

pub fn pso_preset() -> PsoConfig {
    let preset: PsoOverrides = parse_json(PSO_PRESET, "pso.json").expect("bundled preset is valid");
    let mut cfg = PsoConfig::default();
    preset.apply(&mut cfg);
    cfg
}

pub fn aco_preset() -> AcorConfig {
    let preset: AcoOverrides = parse_json(ACO_PRESET, "aco.json").expect("bundled preset is valid");
    let mut cfg = AcorConfig::for_size(DEFAULT_POPULATION);
    preset.apply(&mut cfg);
    cfg
}

fn prefix_key(prefix: &str, err: Error) -> Error {
    match err {
        Error::Config { key, message } => Error::config(format!("{prefix}.{key}"), message),
        other => other,
    }
}

impl RawExperimentConfig {
    /// Applies defaults and checks every id and numeric range.
    pub fn resolve(self) -> Result<ExperimentConfig> {
        let iter = self.iter.unwrap_or(DEFAULT_ITER);
        if iter == 0 {
            return Err(Error::config("iter", "must be at least 1"));
        }
        let runs_per_cell = self.runs_per_cell.unwrap_or(DEFAULT_RUNS);
        if runs_per_cell == 0 {
            return Err(Error::config("runs_per_cell", "must be at least 1"));
        }
        if self.experiment_id.trim().is_empty() {
            return Err(Error::config("experiment_id", "must not be empty"));
        }
        if self.experiment_id.contains(',') || self.experiment_id.contains('\n') {
            return Err(Error::config("experiment_id", "must not contain commas or newlines"));
        }

        let parse_fn = |key: String, id: &str| id.parse::<FunctionId>().map_err(|e| Error::config(key, e.to_string()));
        let functions = self
            .functions
            .iter()
            .enumerate()
            .map(|(i, id)| parse_fn(format!("functions[{i}]"), id))
            .collect::<Result<Vec<_>>>()?;
        if functions.is_empty() {
            return Err(Error::config("functions", "must list at least one function"));
        }
        let algorithms = self
            .algorithms
            .iter()
            .enumerate()
            .map(|(i, id)| {
                id.parse::<AlgorithmId>().map_err(|e| Error::config(format!("algorithms[{i}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        if algorithms.is_empty() {
            return Err(Error::config("algorithms", "must list at least one algorithm"));
        }
        for (list, key) in [(&self.functions, "functions"), (&self.algorithms, "algorithms")] {
            let mut seen = std::collections::HashSet::new();
            if let Some(dup) = list.iter().find(|x| !seen.insert(*x)) {
                return Err(Error::config(key, format!("`{dup}` is listed twice")));
            }
        }

        let mut blocks = BTreeMap::new();
        for (name, block) in self.abco {
            let id = parse_fn(format!("abco.{name}"), &name)?;
            blocks.insert(id, block);
        }
        let mut population_overrides = BTreeMap::new();
        for (name, size) in self.population_overrides {
            let id = parse_fn(format!("population_overrides.{name}"), &name)?;
            if size == 0 {
                return Err(Error::config(format!("population_overrides.{name}"), "must be at least 1"));
            }
            population_overrides.insert(id, size);
        }

        let mut abco = BTreeMap::new();
        for &f in &functions {
            let mut cfg = abco_preset(f);
            if let Some(block) = blocks.get(&f) {
                block.apply(&mut cfg);
            }
            if let Some(&size) = population_overrides.get(&f) {
                cfg.size = size;
            }
            cfg.iter = iter;
            cfg.validate().map_err(|e| prefix_key(&format!("abco.{f}"), e))?;
            abco.insert(f, cfg);
        }

        let mut pso = pso_preset();
        self.pso.apply(&mut pso);
        pso.iter = iter;
        pso.validate().map_err(|e| prefix_key("pso", e))?;

        let mut aco = aco_preset();
        self.aco.apply(&mut aco);
        aco.iter = iter;
        aco.validate().map_err(|e| prefix_key("aco", e))?;

        Ok(ExperimentConfig {
            experiment_id: self.experiment_id,
            base_seed: self.base_seed.unwrap_or(0),
            iter,
            runs_per_cell,
            functions,
            algorithms,
            abco,
            pso,
            aco,
            population_overrides,
        })
    }
}

impl ExperimentConfig {
    /// Population size used by `algorithm` on `function`.
    pub fn population(&self, function: FunctionId, algorithm: AlgorithmId) -> usize {
        match algorithm {
            AlgorithmId::Abco => self.abco[&function].size,
            AlgorithmId::Pso => self.pso.size,
            AlgorithmId::Aco => self.aco.size,
        }
    }
}

/// Parses a config from JSON text; `origin` labels error messages.
pub fn parse_config(source: &str, origin: &str) -> Result<ExperimentConfig> {
    parse_json::<RawExperimentConfig>(source, origin)?.resolve()
}

/// Loads a config file, or a bundled experiment by name (`experiment1`..`experiment3`).
pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    if let Some((name, source)) = BUNDLED_EXPERIMENTS.iter().find(|(name, _)| Path::new(name) == path) {
        if !path.exists() {
            return parse_config(source, name);
        }
    }
    let source = std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
    parse_config(&source, &path.display().to_string())
}

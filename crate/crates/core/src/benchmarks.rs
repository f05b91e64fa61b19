//! The ten standard test functions, their search boxes and known optima.
//!
//! Rastrigin, Rosenbrock and Sphere accept any dimension; the other seven are
//! strictly two-dimensional. Evaluation outside the search box is allowed and
//! exact: bounds constrain optimisers, not evaluators.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::common::{Objective, OptimizationMode, SearchSpace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionId {
    Ackley,
    Schaffer,
    Rastrigin,
    HoldersTable,
    Rosenbrock,
    Sphere,
    Booth,
    Easom,
    Himmelblau,
    GoldsteinPrice,
}

impl FunctionId {
    /// Registry order. Also the function component of derived seeds.
    pub const ALL: [FunctionId; 10] = [
        FunctionId::Ackley,
        FunctionId::Schaffer,
        FunctionId::Rastrigin,
        FunctionId::HoldersTable,
        FunctionId::Rosenbrock,
        FunctionId::Sphere,
        FunctionId::Booth,
        FunctionId::Easom,
        FunctionId::Himmelblau,
        FunctionId::GoldsteinPrice,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FunctionId::Ackley => "ackley",
            FunctionId::Schaffer => "schaffer",
            FunctionId::Rastrigin => "rastrigin",
            FunctionId::HoldersTable => "holders_table",
            FunctionId::Rosenbrock => "rosenbrock",
            FunctionId::Sphere => "sphere",
            FunctionId::Booth => "booth",
            FunctionId::Easom => "easom",
            FunctionId::Himmelblau => "himmelblau",
            FunctionId::GoldsteinPrice => "goldstein_price",
        }
    }

    pub fn index(self) -> u16 {
        FunctionId::ALL.iter().position(|&f| f == self).expect("registered") as u16
    }

    /// Whether the function is defined for any dimension, not only 2.
    pub fn is_n_ary(self) -> bool {
        matches!(self, FunctionId::Rastrigin | FunctionId::Rosenbrock | FunctionId::Sphere)
    }

    /// Raw formula. The caller guarantees the arity (2 for the fixed-dimension
    /// functions, at least 1 otherwise).
    pub fn eval(self, x: &[f64]) -> f64 {
        match self {
            FunctionId::Ackley => {
                let (a, b) = (x[0], x[1]);
                -20.0 * (-0.2 * (0.5 * (a * a + b * b)).sqrt()).exp()
                    - (0.5 * ((2.0 * PI * a).cos() + (2.0 * PI * b).cos())).exp()
                    + E
                    + 20.0
            }
            FunctionId::Schaffer => {
                let (a, b) = (x[0], x[1]);
                let num = (a * a - b * b).sin().powi(2) - 0.5;
                let den = (1.0 + 0.001 * (a * a + b * b)).powi(2);
                0.5 + num / den
            }
            FunctionId::Rastrigin => {
                const A: f64 = 10.0;
                A * x.len() as f64 + x.iter().map(|&v| v * v - A * (2.0 * PI * v).cos()).sum::<f64>()
            }
            FunctionId::HoldersTable => {
                let (a, b) = (x[0], x[1]);
                let r = (a * a + b * b).sqrt();
                -(a.sin() * b.cos() * (1.0 - r / PI).abs().exp()).abs()
            }
            FunctionId::Rosenbrock => {
                x.windows(2).map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2)).sum()
            }
            FunctionId::Sphere => x.iter().map(|v| v * v).sum(),
            FunctionId::Booth => {
                let (a, b) = (x[0], x[1]);
                (a + 2.0 * b - 7.0).powi(2) + (2.0 * a + b - 5.0).powi(2)
            }
            FunctionId::Easom => {
                let (a, b) = (x[0], x[1]);
                -a.cos() * b.cos() * (-((a - PI).powi(2) + (b - PI).powi(2))).exp()
            }
            FunctionId::Himmelblau => {
                let (a, b) = (x[0], x[1]);
                (a * a + b - 11.0).powi(2) + (a + b * b - 7.0).powi(2)
            }
            FunctionId::GoldsteinPrice => {
                let (a, b) = (x[0], x[1]);
                let p = 1.0
                    + (a + b + 1.0).powi(2) * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
                let q = 30.0
                    + (2.0 * a - 3.0 * b).powi(2)
                        * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
                p * q
            }
        }
    }

    fn bounds(self) -> (f64, f64) {
        match self {
            FunctionId::Ackley => (-5.0, 5.0),
            FunctionId::Schaffer => (-100.0, 100.0),
            FunctionId::Rastrigin => (-5.12, 5.12),
            FunctionId::HoldersTable => (-10.0, 10.0),
            FunctionId::Rosenbrock => (-5.0, 10.0),
            FunctionId::Sphere => (-100.0, 100.0),
            FunctionId::Booth => (-10.0, 10.0),
            FunctionId::Easom => (-100.0, 100.0),
            FunctionId::Himmelblau => (-5.0, 5.0),
            FunctionId::GoldsteinPrice => (-2.0, 2.0),
        }
    }

    /// Known minimum value and one listed minimiser in `dim` dimensions.
    fn optimum(self, dim: usize) -> (f64, Vec<f64>) {
        match self {
            FunctionId::Ackley | FunctionId::Schaffer => (0.0, vec![0.0, 0.0]),
            FunctionId::Rastrigin | FunctionId::Sphere => (0.0, vec![0.0; dim]),
            FunctionId::HoldersTable => (-19.2085, vec![8.05502, 9.66459]),
            FunctionId::Rosenbrock => (0.0, vec![1.0; dim]),
            FunctionId::Booth => (0.0, vec![1.0, 3.0]),
            FunctionId::Easom => (-1.0, vec![PI, PI]),
            FunctionId::Himmelblau => (0.0, vec![3.0, 2.0]),
            FunctionId::GoldsteinPrice => (3.0, vec![0.0, -1.0]),
        }
    }

    /// The registered 2-D specification.
    pub fn spec(self) -> ObjectiveSpec {
        self.spec_with_dim(2).expect("every function is defined in 2-D")
    }

    /// Specification in `dim` dimensions; only the n-ary functions accept `dim != 2`.
    pub fn spec_with_dim(self, dim: usize) -> Result<ObjectiveSpec> {
        if dim == 0 || (dim != 2 && !self.is_n_ary()) {
            return Err(Error::contract(format!("{self} is not defined in {dim} dimension(s)")));
        }
        let (lb, ub) = self.bounds();
        let (known_minimum, known_argmin) = self.optimum(dim);
        Ok(ObjectiveSpec {
            id: self,
            dim,
            space: SearchSpace::new(dim, lb, ub)?,
            known_minimum,
            known_argmin,
            mode: OptimizationMode::Min,
        })
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FunctionId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::UnknownFunction { id: s.to_string(), valid: list_functions().join(", ") })
    }
}

/// A benchmark function together with its domain and known optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    pub id: FunctionId,
    pub dim: usize,
    pub space: SearchSpace,
    pub known_minimum: f64,
    pub known_argmin: Vec<f64>,
    pub mode: OptimizationMode,
}

impl ObjectiveSpec {
    /// Evaluates with an arity check.
    pub fn try_evaluate(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dim {
            return Err(Error::contract(format!("{} expects {} coordinates, got {}", self.id, self.dim, point.len())));
        }
        Ok(self.id.eval(point))
    }
}

impl Objective for ObjectiveSpec {
    fn evaluate(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.dim);
        self.id.eval(point)
    }
}

/// Evaluates the function named `id` at `point`.
pub fn evaluate(id: &str, point: &[f64]) -> Result<f64> {
    let id: FunctionId = id.parse()?;
    if id.is_n_ary() {
        id.spec_with_dim(point.len())?.try_evaluate(point)
    } else {
        id.spec().try_evaluate(point)
    }
}

pub fn spec_of(id: &str) -> Result<ObjectiveSpec> {
    Ok(id.parse::<FunctionId>()?.spec())
}

pub fn list_functions() -> Vec<&'static str> {
    FunctionId::ALL.iter().map(|f| f.as_str()).collect()
}

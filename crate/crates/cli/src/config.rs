//! JSON configuration parsing with path-qualified diagnostics.
//!
//! The accepted document shape is
//!
//! ```json
//! {
//!   "params": { "lambda": …, "beta": …, "mu": …, "k": …, "delta": …,
//!               "epsilon": …, "gamma": …, "d_i": …, "d_t": … },
//!   "initial": { "s": …, "l": …, "i": …, "t": … },
//!   "solver": { "alphas": […], "h": …, "t_end": …,
//!               "corrector_iterations": … }
//! }
//! ```
//!
//! `solver.corrector_iterations` is optional (default 1); every other key is
//! required, and unknown keys anywhere are rejected. All diagnostics carry
//! the JSON path of the offending value.

use fractb::order::FractionalOrder;
use fractb::scenarios::{ScenarioError, ScenarioSpec};
use fractb::tb::{ModelParams, State, TbError};
use serde::Deserialize;
use thiserror::Error;

/// A configuration problem, qualified with the JSON path it occurred at.
#[derive(Debug, Error)]
#[error("config error at {path}: {message}")]
pub struct ConfigError {
    /// Dotted JSON path (`params.k`, `solver.alphas[2]`, …).
    pub path: String,
    /// What went wrong at that path.
    pub message: String,
}

impl ConfigError {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { path: path.into(), message: message.into() }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDocument {
    params: ParamsSection,
    initial: InitialSection,
    solver: SolverSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsSection {
    lambda: f64,
    beta: f64,
    mu: f64,
    k: f64,
    delta: f64,
    epsilon: f64,
    gamma: f64,
    d_i: f64,
    d_t: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InitialSection {
    s: f64,
    l: f64,
    i: f64,
    t: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolverSection {
    alphas: Vec<f64>,
    h: f64,
    t_end: f64,
    #[serde(default)]
    corrector_iterations: Option<u32>,
}

/// Parses and validates a configuration document into a runnable scenario.
pub fn parse_config(text: &str) -> Result<ScenarioSpec, ConfigError> {
    let deserializer = &mut serde_json::Deserializer::from_str(text);
    let document: ConfigDocument =
        serde_path_to_error::deserialize(deserializer).map_err(|error| {
            let path = error.path().to_string();
            // serde_path_to_error renders an unlocatable path (e.g. a syntax
            // error before any key) as "?".
            let path = if path.is_empty() || path == "." || path == "?" {
                String::from("document root")
            } else {
                path
            };
            ConfigError::new(path, error.inner().to_string())
        })?;
    build_spec(document)
}

fn build_spec(document: ConfigDocument) -> Result<ScenarioSpec, ConfigError> {
    let ParamsSection { lambda, beta, mu, k, delta, epsilon, gamma, d_i, d_t } = document.params;
    let params = ModelParams { lambda, beta, mu, k, delta, epsilon, gamma, d_i, d_t };
    params.validate().map_err(|error| match error {
        TbError::InvalidParameter { name, value, requirement } => ConfigError::new(
            format!("params.{name}"),
            format!("must be {requirement} (got {value})"),
        ),
        other => ConfigError::new("params", other.to_string()),
    })?;

    let InitialSection { s, l, i, t } = document.initial;
    for (name, value) in [("s", s), ("l", l), ("i", i), ("t", t)] {
        if !value.is_finite() {
            return Err(ConfigError::new(
                format!("initial.{name}"),
                format!("must be a finite number (got {value})"),
            ));
        }
    }
    let initial = State::new(s, l, i, t);

    let solver = document.solver;
    if solver.alphas.is_empty() {
        return Err(ConfigError::new(
            "solver.alphas",
            "must contain at least one fractional order",
        ));
    }
    let mut orders = Vec::with_capacity(solver.alphas.len());
    for (index, &alpha) in solver.alphas.iter().enumerate() {
        let order = FractionalOrder::new(alpha).map_err(|error| {
            ConfigError::new(format!("solver.alphas[{index}]"), error.to_string())
        })?;
        orders.push(order);
    }

    let spec = ScenarioSpec::new(params, initial, orders, solver.h, solver.t_end)
        .map_err(scenario_error_path)?;
    match solver.corrector_iterations {
        None => Ok(spec),
        Some(iterations) => spec
            .with_corrector_iterations(iterations)
            .map_err(|error| ConfigError::new("solver.corrector_iterations", error.to_string())),
    }
}

fn scenario_error_path(error: ScenarioError) -> ConfigError {
    let path = match &error {
        ScenarioError::EmptyOrders | ScenarioError::DuplicateOrder(_) => "solver.alphas",
        ScenarioError::InvalidStepSize(_) => "solver.h",
        ScenarioError::InvalidHorizon(_) => "solver.t_end",
        ScenarioError::ZeroCorrectorIterations => "solver.corrector_iterations",
        ScenarioError::TooManySteps { .. } | ScenarioError::EmptyGrid => "solver",
        _ => "document root",
    };
    ConfigError::new(path, error.to_string())
}

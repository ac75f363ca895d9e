//! Packaged experiments on the TB model: fractional-order sweeps, Lyapunov
//! monitoring along trajectories, convergence-order studies against exact
//! solutions, and equilibrium-attraction checks. The [`baseline_scenario`]
//! and [`endemic_scenario`] presets reproduce the reference short- and
//! long-horizon runs.

use std::collections::BTreeMap;

use crate::order::FractionalOrder;
use crate::solver::{self, FnRhs, SolverConfig, SolverError, Trajectory};
use crate::special::{gamma, mittag_leffler, SpecialFunctionError};
use crate::tb::{LyapunovWeights, ModelParams, State, TbDynamics, TbError};

/// Cost guard: a scenario may not ask for more steps than this (the history
/// sums make each run quadratic in the step count).
pub const MAX_STEP_COUNT: f64 = 1e6;

/// Relative slack when checking that a step size divides the final time of a
/// convergence study into an integer number of steps.
const DIVISIBILITY_SLACK: f64 = 1e-9;

/// Errors from scenario validation and execution.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Model(#[from] TbError),
    #[error("at least one fractional order is required")]
    EmptyOrders,
    #[error("fractional orders must be pairwise distinct; {0} appears more than once")]
    DuplicateOrder(FractionalOrder),
    #[error("step size must be positive and finite, got {0}")]
    InvalidStepSize(f64),
    #[error("the horizon t_end must be positive and finite, got {0}")]
    InvalidHorizon(f64),
    #[error(
        "cost guard exceeded: t_end/h asks for {steps:.0} steps, more than the {limit:e} limit"
    )]
    TooManySteps { steps: f64, limit: f64 },
    #[error("the horizon is shorter than half a step; there is no step to take")]
    EmptyGrid,
    #[error("corrector iteration count must be at least 1")]
    ZeroCorrectorIterations,
    #[error("solver failed for order {order}: {source}")]
    Solver {
        order: FractionalOrder,
        source: SolverError,
    },
    #[error("expected a 4-compartment trajectory, got dimension {0}")]
    WrongDimension(usize),
    #[error("lyapunov evaluation failed at grid node {node}: {source}")]
    LyapunovAtNode { node: usize, source: TbError },
    #[error("a convergence study needs at least 3 step sizes")]
    TooFewStepSizes,
    #[error("convergence-study step sizes must be positive and strictly descending")]
    NonDescendingStepSizes,
    #[error(
        "step size {step_size} does not divide the final time {t_final} \
         into an integer number of steps"
    )]
    NonDivisibleStep { step_size: f64, t_final: f64 },
    #[error("the final time must be positive and finite, got {0}")]
    InvalidFinalTime(f64),
    #[error(transparent)]
    Special(#[from] SpecialFunctionError),
    #[error("the parameter set has no endemic equilibrium (R0 <= 1); nothing to monitor")]
    NoEndemicEquilibrium,
}

/// A validated scenario: model parameters, initial state, the fractional
/// orders to sweep, and the time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    params: ModelParams,
    initial: State,
    orders: Vec<FractionalOrder>,
    step_size: f64,
    t_end: f64,
    corrector_iterations: u32,
    label: String,
}

impl ScenarioSpec {
    /// Validates and assembles a scenario. Requirements: valid model
    /// parameters, finite initial state, a nonempty list of pairwise
    /// distinct orders, positive finite `step_size` and `t_end`, and
    /// `t_end / step_size` within [`MAX_STEP_COUNT`] (rounding to at least
    /// one step).
    pub fn new(
        params: ModelParams,
        initial: State,
        orders: Vec<FractionalOrder>,
        step_size: f64,
        t_end: f64,
    ) -> Result<Self, ScenarioError> {
        params.validate()?;
        initial.ensure_finite()?;
        if orders.is_empty() {
            return Err(ScenarioError::EmptyOrders);
        }
        for (index, order) in orders.iter().enumerate() {
            if orders[..index].contains(order) {
                return Err(ScenarioError::DuplicateOrder(*order));
            }
        }
        if !(step_size.is_finite() && step_size > 0.0) {
            return Err(ScenarioError::InvalidStepSize(step_size));
        }
        if !(t_end.is_finite() && t_end > 0.0) {
            return Err(ScenarioError::InvalidHorizon(t_end));
        }
        let steps = t_end / step_size;
        if steps > MAX_STEP_COUNT {
            return Err(ScenarioError::TooManySteps { steps, limit: MAX_STEP_COUNT });
        }
        if steps.round() < 1.0 {
            return Err(ScenarioError::EmptyGrid);
        }
        Ok(Self {
            params,
            initial,
            orders,
            step_size,
            t_end,
            corrector_iterations: SolverConfig::DEFAULT_CORRECTOR_ITERATIONS,
            label: String::from("scenario"),
        })
    }

    /// Overrides the number of corrector sweeps per step (must be >= 1).
    pub fn with_corrector_iterations(mut self, iterations: u32) -> Result<Self, ScenarioError> {
        if iterations == 0 {
            return Err(ScenarioError::ZeroCorrectorIterations);
        }
        self.corrector_iterations = iterations;
        Ok(self)
    }

    /// Attaches a human-readable label (used in chart titles).
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn orders(&self) -> &[FractionalOrder] {
        &self.orders
    }

    pub fn step_size(&self) -> f64 {
        self.step_size
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn corrector_iterations(&self) -> u32 {
        self.corrector_iterations
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The number of solver steps: `round(t_end / step_size)`, at least 1.
    pub fn step_count(&self) -> usize {
        (self.t_end / self.step_size).round() as usize
    }
}

/// Integrates the scenario for a single order (which need not appear in the
/// scenario's own order list).
pub fn run_single(
    spec: &ScenarioSpec,
    order: FractionalOrder,
) -> Result<Trajectory, ScenarioError> {
    let dynamics = TbDynamics::new(*spec.params())?;
    let wrap = |source| ScenarioError::Solver { order, source };
    let config = SolverConfig::new(order, spec.step_size(), spec.step_count())
        .and_then(|config| config.with_corrector_iterations(spec.corrector_iterations()))
        .map_err(wrap)?;
    solver::solve(&dynamics, &spec.initial().to_array(), &config).map_err(wrap)
}

/// Integrates the scenario once per listed order.
///
/// The solves are independent of one another; results are keyed by order, so
/// the outcome does not depend on execution sequence. Two calls on equal
/// specs produce bit-identical trajectories.
pub fn run_alpha_sweep(
    spec: &ScenarioSpec,
) -> Result<BTreeMap<FractionalOrder, Trajectory>, ScenarioError> {
    spec.orders()
        .iter()
        .map(|&order| Ok((order, run_single(spec, order)?)))
        .collect()
}

/// The endemic equilibrium and its Lyapunov weights for `params`, or
/// [`ScenarioError::NoEndemicEquilibrium`] below the threshold.
pub fn endemic_reference(params: &ModelParams) -> Result<(State, LyapunovWeights), ScenarioError> {
    let endemic = params
        .endemic_equilibrium()?
        .ok_or(ScenarioError::NoEndemicEquilibrium)?;
    let weights = LyapunovWeights::new(params, endemic)?;
    Ok((endemic, weights))
}

/// Evaluates the Lyapunov function at every grid node of a 4-compartment
/// trajectory, returning `(time, value)` pairs of the same length.
///
/// Fails if the trajectory is not 4-dimensional or any visited state has a
/// component that is not strictly positive (the index of the offending node
/// is reported).
pub fn lyapunov_series(
    trajectory: &Trajectory,
    endemic: State,
    weights: &LyapunovWeights,
) -> Result<Vec<(f64, f64)>, ScenarioError> {
    if trajectory.dim() != 4 {
        return Err(ScenarioError::WrongDimension(trajectory.dim()));
    }
    trajectory
        .iter()
        .enumerate()
        .map(|(node, (time, components))| {
            weights
                .value(State::from_slice(components), endemic)
                .map(|value| (time, value))
                .map_err(|source| ScenarioError::LyapunovAtNode { node, source })
        })
        .collect()
}

/// Scalar benchmark problems with known exact solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchmarkProblem {
    /// `D^a x = gamma(3)/gamma(3-a) t^(2-a)`, `x(0) = 0`; exact `x(t) = t^2`.
    /// The forcing does not depend on `x`.
    PowerLaw,
    /// `D^a x = -x`, `x(0) = 1`; exact `x(t) = E_a(-t^a)` (Mittag-Leffler).
    LinearMittagLeffler,
}

/// One refinement level of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub step_size: f64,
    /// Max-norm error against the exact solution at the final time.
    pub error: f64,
    /// `log2` of the previous error over this one; absent on the first row.
    /// May be non-finite when an error underflows to zero.
    pub estimated_order: Option<f64>,
}

/// Runs the benchmark at every step size and estimates the observed
/// convergence order from successive final-time errors.
///
/// `step_sizes` must hold at least three positive, strictly descending
/// entries, each dividing `t_final` into an integer number of steps.
pub fn convergence_study(
    problem: BenchmarkProblem,
    order: FractionalOrder,
    step_sizes: &[f64],
    t_final: f64,
) -> Result<Vec<ConvergenceRow>, ScenarioError> {
    if !(t_final.is_finite() && t_final > 0.0) {
        return Err(ScenarioError::InvalidFinalTime(t_final));
    }
    if step_sizes.len() < 3 {
        return Err(ScenarioError::TooFewStepSizes);
    }
    let descending = step_sizes
        .windows(2)
        .all(|pair| pair[0] > pair[1]);
    if !descending || step_sizes.iter().any(|&h| !(h.is_finite() && h > 0.0)) {
        return Err(ScenarioError::NonDescendingStepSizes);
    }

    let exact = exact_solution(problem, order, t_final)?;
    let alpha = order.value();

    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(step_sizes.len());
    for &step_size in step_sizes {
        let step_count = integer_step_count(step_size, t_final)?;
        let config = SolverConfig::new(order, step_size, step_count)
            .map_err(|source| ScenarioError::Solver { order, source })?;

        let final_value = match problem {
            BenchmarkProblem::PowerLaw => {
                let coefficient = gamma(3.0)? / gamma(3.0 - alpha)?;
                let exponent = 2.0 - alpha;
                let rhs = FnRhs::new(1, move |t: f64, _x: &[f64], dx: &mut [f64]| {
                    dx[0] = coefficient * t.powf(exponent);
                });
                solver::solve(&rhs, &[0.0], &config)
            }
            BenchmarkProblem::LinearMittagLeffler => {
                let rhs = FnRhs::new(1, |_t: f64, x: &[f64], dx: &mut [f64]| dx[0] = -x[0]);
                solver::solve(&rhs, &[1.0], &config)
            }
        }
        .map_err(|source| ScenarioError::Solver { order, source })?
        .final_state()[0];

        let error = (final_value - exact).abs();
        let estimated_order = rows
            .last()
            .map(|previous: &ConvergenceRow| (previous.error / error).log2());
        rows.push(ConvergenceRow { step_size, error, estimated_order });
    }
    Ok(rows)
}

fn exact_solution(
    problem: BenchmarkProblem,
    order: FractionalOrder,
    t_final: f64,
) -> Result<f64, ScenarioError> {
    match problem {
        BenchmarkProblem::PowerLaw => Ok(t_final * t_final),
        BenchmarkProblem::LinearMittagLeffler => {
            Ok(mittag_leffler(order, -t_final.powf(order.value()))?)
        }
    }
}

fn integer_step_count(step_size: f64, t_final: f64) -> Result<usize, ScenarioError> {
    let steps = (t_final / step_size).round();
    if steps < 1.0 || (steps * step_size - t_final).abs() > DIVISIBILITY_SLACK * t_final {
        return Err(ScenarioError::NonDivisibleStep { step_size, t_final });
    }
    Ok(steps as usize)
}

/// Outcome of an equilibrium-attraction check over a trajectory tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttractionReport {
    /// True when every checked node is within `rel_tol` of the target.
    pub converged: bool,
    /// Largest relative distance seen over the tail.
    pub max_relative_distance: f64,
    /// Number of grid nodes checked (the tail).
    pub checked_nodes: usize,
}

/// Checks whether the final `tail_fraction` of a 4-compartment trajectory
/// stays within `rel_tol` of `target`, in max-norm distance normalized by
/// the max-norm of the target.
///
/// # Panics
/// Panics when the trajectory is not 4-dimensional or `tail_fraction` is
/// outside `(0, 1]`.
pub fn equilibrium_convergence_check(
    trajectory: &Trajectory,
    target: State,
    tail_fraction: f64,
    rel_tol: f64,
) -> AttractionReport {
    assert_eq!(trajectory.dim(), 4, "attraction checks expect the 4 TB compartments");
    assert!(
        tail_fraction > 0.0 && tail_fraction <= 1.0,
        "tail_fraction must lie in (0, 1], got {tail_fraction}"
    );

    let len = trajectory.len();
    let checked_nodes = ((len as f64 * tail_fraction).ceil() as usize).clamp(1, len);
    let start = len - checked_nodes;
    let scale = target.max_norm();
    let target = target.to_array();

    let mut max_relative_distance = 0.0_f64;
    for node in start..len {
        let state = trajectory.state(node);
        let mut distance = 0.0_f64;
        for (value, reference) in state.iter().zip(target) {
            distance = distance.max((value - reference).abs());
        }
        max_relative_distance = max_relative_distance.max(distance / scale);
    }
    AttractionReport {
        converged: max_relative_distance <= rel_tol,
        max_relative_distance,
        checked_nodes,
    }
}

/// Reference parameters in the sub-threshold (disease-free) regime.
pub fn baseline_params() -> ModelParams {
    ModelParams {
        lambda: 792.8571,
        beta: 5e-5,
        mu: 0.143,
        k: 0.15,
        delta: 1.5,
        epsilon: 0.00368,
        gamma: 0.7,
        d_i: 0.3,
        d_t: 0.05,
    }
}

/// The same rates with transmission raised into the endemic regime
/// (reproduction number about 2.68).
pub fn endemic_params() -> ModelParams {
    ModelParams { beta: 2e-2, ..baseline_params() }
}

/// The reference initial condition (total population 1).
pub fn reference_initial() -> State {
    State::new(0.8, 0.05, 0.1, 0.05)
}

/// The reference order sweep 0.7, 0.8, 0.9, 1.0.
pub fn reference_orders() -> Vec<FractionalOrder> {
    [0.7, 0.8, 0.9, 1.0]
        .into_iter()
        .map(|value| FractionalOrder::new(value).expect("reference orders are valid"))
        .collect()
}

/// Short-horizon scenario: sub-threshold parameters over `t` in `[0, 20]`
/// with `h = 2^-8`.
pub fn baseline_scenario() -> ScenarioSpec {
    ScenarioSpec::new(baseline_params(), reference_initial(), reference_orders(), 0.00390625, 20.0)
        .expect("the baseline preset is valid")
        .with_label("baseline")
}

/// Long-horizon scenario: endemic parameters over `t` in `[0, 2000]` with
/// `h = 0.05`, long enough to watch convergence toward the endemic
/// equilibrium.
pub fn endemic_scenario() -> ScenarioSpec {
    ScenarioSpec::new(endemic_params(), reference_initial(), reference_orders(), 0.05, 2000.0)
        .expect("the endemic preset is valid")
        .with_label("endemic")
}

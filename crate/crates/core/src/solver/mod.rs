//! A fixed-step predictor-corrector solver for Caputo fractional initial
//! value problems `D^a x(t) = f(t, x(t))`, `x(0) = x0`, with order
//! `a` in `(0, 1]`.

mod abm;
mod weights;

pub use abm::solve;
pub use weights::{corrector_weights, predictor_weights};

use crate::order::FractionalOrder;

/// Right-hand side of a (fractional) ODE system.
///
/// Implementations write the derivative of every component into `derivative`
/// (a slice of length [`Rhs::dim`]) instead of allocating, so the solver can
/// evaluate them tens of thousands of times without churn.
pub trait Rhs {
    /// Number of state components.
    fn dim(&self) -> usize;

    /// Evaluates the right-hand side at `time` and `state`, writing into
    /// `derivative`. Both slices have length [`Rhs::dim`].
    fn eval(&self, time: f64, state: &[f64], derivative: &mut [f64]);
}

/// Adapts a closure (plus an explicit dimension) to the [`Rhs`] trait.
pub struct FnRhs<F> {
    dim: usize,
    function: F,
}

impl<F> FnRhs<F>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    pub fn new(dim: usize, function: F) -> Self {
        Self { dim, function }
    }
}

impl<F> Rhs for FnRhs<F>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, time: f64, state: &[f64], derivative: &mut [f64]) {
        (self.function)(time, state, derivative)
    }
}

/// Errors from solver configuration and integration.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolverError {
    #[error("step size must be positive and finite, got {0}")]
    InvalidStepSize(f64),
    #[error("step count must be at least 1")]
    ZeroStepCount,
    #[error("corrector iteration count must be at least 1")]
    ZeroCorrectorIterations,
    #[error("system dimension must be at least 1")]
    ZeroDimension,
    #[error("initial state has length {actual} but the system dimension is {expected}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("initial state component {component} is not finite")]
    NonFiniteInitialState { component: usize },
    #[error(
        "derivative component {component} became non-finite at step {step} (t = {time})"
    )]
    NonFiniteDerivative {
        step: usize,
        component: usize,
        time: f64,
    },
    #[error("state component {component} became non-finite at step {step} (t = {time})")]
    NonFiniteState {
        step: usize,
        component: usize,
        time: f64,
    },
}

/// Validated integration parameters: fractional order, step size, step
/// count, and the number of corrector sweeps per step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    order: FractionalOrder,
    step_size: f64,
    step_count: usize,
    corrector_iterations: u32,
}

impl SolverConfig {
    /// One corrector sweep per step (the usual predict-evaluate-correct
    /// arrangement) unless overridden.
    pub const DEFAULT_CORRECTOR_ITERATIONS: u32 = 1;

    pub fn new(
        order: FractionalOrder,
        step_size: f64,
        step_count: usize,
    ) -> Result<Self, SolverError> {
        if !(step_size.is_finite() && step_size > 0.0) {
            return Err(SolverError::InvalidStepSize(step_size));
        }
        if step_count == 0 {
            return Err(SolverError::ZeroStepCount);
        }
        Ok(Self {
            order,
            step_size,
            step_count,
            corrector_iterations: Self::DEFAULT_CORRECTOR_ITERATIONS,
        })
    }

    /// Overrides the number of corrector sweeps per step (must be >= 1).
    pub fn with_corrector_iterations(mut self, iterations: u32) -> Result<Self, SolverError> {
        if iterations == 0 {
            return Err(SolverError::ZeroCorrectorIterations);
        }
        self.corrector_iterations = iterations;
        Ok(self)
    }

    pub fn order(&self) -> FractionalOrder {
        self.order
    }

    pub fn step_size(&self) -> f64 {
        self.step_size
    }

    pub fn step_count(&self) -> usize {
        self.step_count
    }

    pub fn corrector_iterations(&self) -> u32 {
        self.corrector_iterations
    }
}

/// A solved trajectory: the time grid and the state at every node,
/// stored row-major (node-by-node).
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    dim: usize,
    times: Vec<f64>,
    states: Vec<f64>,
}

impl Trajectory {
    pub(crate) fn new(dim: usize, times: Vec<f64>, states: Vec<f64>) -> Self {
        debug_assert_eq!(times.len() * dim, states.len());
        Self { dim, times, states }
    }

    /// Number of state components.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of nodes (steps + 1, including the initial node).
    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// Always false: a trajectory holds at least its initial node.
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// The time grid, `t_i = i * h` accumulated by repeated addition.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// The state at node `node`.
    ///
    /// # Panics
    /// Panics if `node >= self.len()`.
    pub fn state(&self, node: usize) -> &[f64] {
        &self.states[node * self.dim..(node + 1) * self.dim]
    }

    /// The state at the final node.
    pub fn final_state(&self) -> &[f64] {
        self.state(self.len() - 1)
    }

    /// One component of the state across all nodes.
    ///
    /// # Panics
    /// Panics if `component >= self.dim()`.
    pub fn component(&self, component: usize) -> impl Iterator<Item = f64> + '_ {
        assert!(component < self.dim);
        self.states.iter().skip(component).step_by(self.dim).copied()
    }

    /// Iterates over `(time, state)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, &[f64])> {
        self.times
            .iter()
            .copied()
            .zip(self.states.chunks_exact(self.dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validates_its_inputs() {
        let order = FractionalOrder::new(0.5).unwrap();
        assert!(matches!(
            SolverConfig::new(order, 0.0, 10),
            Err(SolverError::InvalidStepSize(_))
        ));
        assert!(matches!(
            SolverConfig::new(order, f64::NAN, 10),
            Err(SolverError::InvalidStepSize(_))
        ));
        assert!(matches!(
            SolverConfig::new(order, 0.1, 0),
            Err(SolverError::ZeroStepCount)
        ));
        let config = SolverConfig::new(order, 0.1, 10).unwrap();
        assert_eq!(config.corrector_iterations(), 1);
        assert!(matches!(
            config.with_corrector_iterations(0),
            Err(SolverError::ZeroCorrectorIterations)
        ));
        let config = config.with_corrector_iterations(3).unwrap();
        assert_eq!(config.corrector_iterations(), 3);
    }

    #[test]
    fn trajectory_accessors_are_consistent() {
        let trajectory = Trajectory::new(
            2,
            vec![0.0, 0.5, 1.0],
            vec![1.0, 10.0, 2.0, 20.0, 3.0, 30.0],
        );
        assert_eq!(trajectory.len(), 3);
        assert_eq!(trajectory.dim(), 2);
        assert_eq!(trajectory.state(1), &[2.0, 20.0]);
        assert_eq!(trajectory.final_state(), &[3.0, 30.0]);
        assert_eq!(trajectory.component(1).collect::<Vec<_>>(), vec![10.0, 20.0, 30.0]);
        let pairs: Vec<(f64, &[f64])> = trajectory.iter().collect();
        assert_eq!(pairs[2], (1.0, &[3.0, 30.0][..]));
    }
}

//! The integration loop: a predict-evaluate-correct-evaluate sweep with the
//! full-memory history sums of the fractional Adams-Bashforth-Moulton
//! method.

use super::weights::{corrector_head, corrector_kernel, predictor_kernel};
use super::{Rhs, SolverConfig, SolverError, Trajectory};
use crate::special::gamma;

/// Integrates the Caputo initial value problem `D^a x = f(t, x)`,
/// `x(0) = x0`, over `step_count` uniform steps of `step_size`.
///
/// Each step first forms the predictor
///
/// ```text
/// x^P_{n+1} = x0 + h^a / gamma(a+1) * sum_{j=0..=n} b_j f(t_j, x_j)
/// ```
///
/// then runs the configured number of corrector sweeps
///
/// ```text
/// x_{n+1} <- x0 + h^a / gamma(a+2) * (sum_{j=0..=n} a_j f(t_j, x_j) + f(t_{n+1}, x_{n+1}))
/// ```
///
/// starting from the predictor value, and finally re-evaluates `f` at the
/// accepted state for use by later history sums. History sums always
/// accumulate in ascending node order, so results are reproducible
/// bit-for-bit for identical inputs.
///
/// The memory term makes the cost quadratic in `step_count` (every step
/// revisits the whole history); the per-node weights are read from kernel
/// tables precomputed once per call.
///
/// Errors are returned when the configuration or initial state is invalid
/// and when any derivative or state component stops being finite; the error
/// carries the node index and time where that happened.
pub fn solve<R>(
    rhs: &R,
    initial_state: &[f64],
    config: &SolverConfig,
) -> Result<Trajectory, SolverError>
where
    R: Rhs + ?Sized,
{
    let dim = rhs.dim();
    if dim == 0 {
        return Err(SolverError::ZeroDimension);
    }
    if initial_state.len() != dim {
        return Err(SolverError::DimensionMismatch {
            expected: dim,
            actual: initial_state.len(),
        });
    }
    if let Some(component) = initial_state.iter().position(|v| !v.is_finite()) {
        return Err(SolverError::NonFiniteInitialState { component });
    }

    let alpha = config.order().value();
    let step_count = config.step_count();
    let step_size = config.step_size();

    let step_size_pow = step_size.powf(alpha);
    let predictor_scale =
        step_size_pow / gamma(alpha + 1.0).expect("alpha + 1 lies inside the gamma domain");
    let corrector_scale =
        step_size_pow / gamma(alpha + 2.0).expect("alpha + 2 lies inside the gamma domain");

    // Kernel tables indexed by lag n - j; the predictor needs lags up to
    // step_count - 1, the corrector's interior weights one less.
    let predictor_kernels: Vec<f64> =
        (0..step_count).map(|lag| predictor_kernel(alpha, lag)).collect();
    let corrector_kernels: Vec<f64> = (0..step_count.saturating_sub(1))
        .map(|lag| corrector_kernel(alpha, lag))
        .collect();

    let mut times = Vec::with_capacity(step_count + 1);
    let mut states = Vec::with_capacity((step_count + 1) * dim);
    let mut derivatives = Vec::with_capacity((step_count + 1) * dim);

    times.push(0.0);
    states.extend_from_slice(initial_state);

    let mut derivative = vec![0.0; dim];
    rhs.eval(0.0, initial_state, &mut derivative);
    ensure_finite_derivative(&derivative, 0, 0.0)?;
    derivatives.extend_from_slice(&derivative);

    let mut predictor_sum = vec![0.0; dim];
    let mut corrector_sum = vec![0.0; dim];
    let mut iterate = vec![0.0; dim];
    let mut accepted = vec![0.0; dim];

    for n in 0..step_count {
        // The time grid is built by repeated addition, matching how the
        // quadrature nodes are indexed.
        let next_time = times[n] + step_size;
        let next_node = n + 1;

        // Fused history pass, ascending in the node index j. Node 0 takes
        // the corrector's head weight; nodes 1..=n take the lag kernels.
        let head = corrector_head(alpha, n);
        let first = &derivatives[0..dim];
        let predictor_weight = predictor_kernels[n];
        for c in 0..dim {
            predictor_sum[c] = predictor_weight * first[c];
            corrector_sum[c] = head * first[c];
        }
        for j in 1..=n {
            let predictor_weight = predictor_kernels[n - j];
            let corrector_weight = corrector_kernels[n - j];
            let row = &derivatives[j * dim..(j + 1) * dim];
            for c in 0..dim {
                predictor_sum[c] += predictor_weight * row[c];
                corrector_sum[c] += corrector_weight * row[c];
            }
        }

        for c in 0..dim {
            iterate[c] = initial_state[c] + predictor_scale * predictor_sum[c];
        }
        ensure_finite_state(&iterate, next_node, next_time)?;

        for _ in 0..config.corrector_iterations() {
            rhs.eval(next_time, &iterate, &mut derivative);
            ensure_finite_derivative(&derivative, next_node, next_time)?;
            for c in 0..dim {
                accepted[c] =
                    initial_state[c] + corrector_scale * (corrector_sum[c] + derivative[c]);
            }
            ensure_finite_state(&accepted, next_node, next_time)?;
            iterate.copy_from_slice(&accepted);
        }

        // Evaluate at the accepted state: this value feeds every later
        // history sum.
        rhs.eval(next_time, &accepted, &mut derivative);
        ensure_finite_derivative(&derivative, next_node, next_time)?;

        times.push(next_time);
        states.extend_from_slice(&accepted);
        derivatives.extend_from_slice(&derivative);
    }

    Ok(Trajectory::new(dim, times, states))
}

fn ensure_finite_derivative(values: &[f64], step: usize, time: f64) -> Result<(), SolverError> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(component) => Err(SolverError::NonFiniteDerivative { step, component, time }),
        None => Ok(()),
    }
}

fn ensure_finite_state(values: &[f64], step: usize, time: f64) -> Result<(), SolverError> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(component) => Err(SolverError::NonFiniteState { step, component, time }),
        None => Ok(()),
    }
}

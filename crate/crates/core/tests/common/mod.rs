//! Shared helpers for the integration-test targets.
//!
//! The Runge–Kutta reference here is deliberately independent of the library
//! under test: it is a plain classical RK4 marching scheme used only to
//! cross-check the solver's classical (`alpha = 1`) limit.

#![allow(dead_code)]

/// Integrates `dx/dt = f(t, x)` with classical RK4 on a grid refined
/// `refinement`-fold relative to the coarse grid, returning the states at the
/// coarse nodes (including the initial one).
///
/// `f` writes the derivative of `state` into its third argument.
pub fn rk4_on_coarse_grid<F>(
    f: F,
    initial_state: &[f64],
    coarse_step: f64,
    coarse_steps: usize,
    refinement: usize,
) -> Vec<Vec<f64>>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    assert!(refinement >= 1, "refinement must be at least 1");
    let dim = initial_state.len();
    let fine_step = coarse_step / refinement as f64;

    let mut state = initial_state.to_vec();
    let mut time = 0.0;
    let mut sampled = Vec::with_capacity(coarse_steps + 1);
    sampled.push(state.clone());

    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut probe = vec![0.0; dim];

    for coarse_index in 0..coarse_steps {
        for fine_index in 0..refinement {
            // Recompute time from indices so the grids stay aligned.
            time = (coarse_index * refinement + fine_index) as f64 * fine_step;
            f(time, &state, &mut k1);
            for c in 0..dim {
                probe[c] = state[c] + 0.5 * fine_step * k1[c];
            }
            f(time + 0.5 * fine_step, &probe, &mut k2);
            for c in 0..dim {
                probe[c] = state[c] + 0.5 * fine_step * k2[c];
            }
            f(time + 0.5 * fine_step, &probe, &mut k3);
            for c in 0..dim {
                probe[c] = state[c] + fine_step * k3[c];
            }
            f(time + fine_step, &probe, &mut k4);
            for c in 0..dim {
                state[c] += fine_step / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            }
        }
        sampled.push(state.clone());
    }
    let _ = time;
    sampled
}

/// Maximum relative max-norm deviation between two equally long state
/// sequences: `max_n ||a_n - b_n||_inf / max(1, max_n ||b_n||_inf)`.
pub fn max_relative_deviation(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    assert_eq!(a.len(), b.len(), "sequences must have equal length");
    let scale = b
        .iter()
        .flat_map(|row| row.iter().map(|value| value.abs()))
        .fold(1.0_f64, f64::max);
    let worst = a
        .iter()
        .zip(b)
        .map(|(left, right)| {
            left.iter()
                .zip(right)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0_f64, f64::max)
        })
        .fold(0.0_f64, f64::max);
    worst / scale
}

//! Quadrature weights for the fractional Adams-Bashforth-Moulton scheme.
//!
//! For a step index `n` (the step that produces the state at node `n + 1`)
//! the predictor uses the fractional rectangle-rule weights
//!
//! ```text
//! b_j = (n + 1 - j)^a - (n - j)^a,            j = 0..=n,
//! ```
//!
//! and the corrector uses the fractional trapezoid-rule weights
//!
//! ```text
//! a_0     = n^(a+1) - (n - a) (n + 1)^a,
//! a_j     = (n - j + 2)^(a+1) + (n - j)^(a+1) - 2 (n - j + 1)^(a+1),  1 <= j <= n,
//! a_{n+1} = 1,
//! ```
//!
//! where `a` is the fractional order. Both families depend on `j` only
//! through the lag `n - j`, which is what the kernel functions below take.
//!
//! Evaluating the corrector expressions literally loses up to half of the
//! mantissa to cancellation once the lag is large (the three powers agree in
//! their leading digits), which is fatal when trajectories run for tens of
//! thousands of steps. The kernels therefore switch to mathematically
//! identical series expansions for large lags; the literal expressions are
//! kept for small lags where they are exact enough. At order `1` every
//! expression collapses to the classical Adams weights, which are returned
//! exactly.

use crate::order::FractionalOrder;

/// Lags at or above this use the series forms; below it the literal
/// three-power expressions are accurate to a few ulp.
const SERIES_CUTOFF: usize = 8;

/// `(m+1)^a - m^a` for lag `m`, evaluated without cancellation as
/// `m^a * expm1(a * ln(1 + 1/m))`.
pub(crate) fn predictor_kernel(alpha: f64, lag: usize) -> f64 {
    if lag == 0 {
        return 1.0;
    }
    if alpha == 1.0 {
        return 1.0;
    }
    let m = lag as f64;
    m.powf(alpha) * (alpha * (1.0 / m).ln_1p()).exp_m1()
}

/// `(m+2)^(a+1) + m^(a+1) - 2 (m+1)^(a+1)` for lag `m`.
///
/// For large lags this is evaluated as the binomial series
/// `m^(a-1) * sum_{k>=2} C(a+1, k) (2^k - 2) m^(2-k)`, whose terms decay
/// geometrically for `m >= 8`.
pub(crate) fn corrector_kernel(alpha: f64, lag: usize) -> f64 {
    if alpha == 1.0 {
        return 2.0;
    }
    let beta = alpha + 1.0;
    let m = lag as f64;
    if lag < SERIES_CUTOFF {
        return (m + 2.0).powf(beta) + m.powf(beta) - 2.0 * (m + 1.0).powf(beta);
    }

    let inverse = 1.0 / m;
    let mut binomial = beta * (beta - 1.0) * 0.5; // C(beta, 2)
    let mut power_of_two = 4.0; // 2^k
    let mut inverse_power = 1.0; // m^(2-k)
    let mut sum = 0.0;
    for k in 2..200u32 {
        let term = binomial * (power_of_two - 2.0) * inverse_power;
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
        binomial *= (beta - k as f64) / (k as f64 + 1.0);
        power_of_two *= 2.0;
        inverse_power *= inverse;
    }
    m.powf(beta - 2.0) * sum
}

/// The leading corrector weight `n^(a+1) - (n - a) (n + 1)^a` for step
/// index `n`.
///
/// For large `n` this is evaluated as
/// `(n+1)^a * sum_{j>=1} C(-a, j+1) n^(-j)`, again cancellation-free.
pub(crate) fn corrector_head(alpha: f64, step_index: usize) -> f64 {
    if alpha == 1.0 {
        return 1.0;
    }
    let n = step_index as f64;
    if step_index < SERIES_CUTOFF {
        return n.powf(alpha + 1.0) - (n - alpha) * (n + 1.0).powf(alpha);
    }

    let inverse = 1.0 / n;
    let mut binomial = -alpha; // C(-a, 1)
    let mut inverse_power = 1.0; // n^(-j)
    let mut sum = 0.0;
    for j in 1..200u32 {
        binomial *= (-alpha - j as f64) / (j as f64 + 1.0); // now C(-a, j+1)
        inverse_power *= inverse;
        let term = binomial * inverse_power;
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
    }
    (n + 1.0).powf(alpha) * sum
}

/// The predictor weights `[b_0, ..., b_n]` for step index `n`, in ascending
/// node order. Their sum telescopes to `(n+1)^a`.
pub fn predictor_weights(order: FractionalOrder, step_index: usize) -> Vec<f64> {
    let alpha = order.value();
    (0..=step_index)
        .map(|j| predictor_kernel(alpha, step_index - j))
        .collect()
}

/// The corrector weights `[a_0, ..., a_n, 1]` for step index `n`, in
/// ascending node order; the final entry weights the predicted node `n + 1`.
/// Their sum telescopes to `(a + 1) (n+1)^a`.
pub fn corrector_weights(order: FractionalOrder, step_index: usize) -> Vec<f64> {
    let alpha = order.value();
    let mut weights = Vec::with_capacity(step_index + 2);
    weights.push(corrector_head(alpha, step_index));
    for j in 1..=step_index {
        weights.push(corrector_kernel(alpha, step_index - j));
    }
    weights.push(1.0);
    weights
}

//! A four-compartment tuberculosis model — susceptible (S), latent (L),
//! infectious (I), under treatment (T) — with mass-action transmission,
//! treatment relapse, and disease-induced mortality:
//!
//! ```text
//! S' = lambda - beta I S - mu S
//! L' = beta I S + (1 - k) delta T - b1 L
//! I' = epsilon L + k delta T - b2 I
//! T' = gamma I - b3 T
//! ```
//!
//! with the composite exit rates `b1 = mu + epsilon`,
//! `b2 = mu + gamma + d_i`, `b3 = mu + delta + d_t`. The derivative operator
//! can be the classical one or a Caputo derivative of order `a` in `(0, 1]`;
//! the right-hand side is the same, so [`TbDynamics`] plugs into the solver
//! for both cases.
//!
//! Beyond the vector field this module provides the basic reproduction
//! number, both equilibria, the bounded feasible region in which
//! trajectories live, and a weighted Volterra-type Lyapunov function used to
//! monitor convergence toward the endemic equilibrium.

use crate::solver::Rhs;

/// Relative bound certified for equilibrium residuals: the vector field at a
/// reported equilibrium must vanish to within this times `1 + max |component|`.
pub const RESIDUAL_RELATIVE_BOUND: f64 = 1e-10;

/// Errors from model construction and evaluation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TbError {
    #[error("parameter {name} = {value} is invalid: must be {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    #[error(
        "reproduction-number denominator {value} is not positive; \
         the parameter regime is outside the model's assumptions"
    )]
    NonPositiveThresholdDenominator { value: f64 },
    #[error("the endemic equilibrium is undefined for epsilon = 0 (no latency progression)")]
    DegenerateLatencyRate,
    #[error("state component {component} is not finite")]
    NonFiniteState { component: &'static str },
    #[error(
        "lyapunov machinery requires strictly positive components, \
         got {component} = {value}"
    )]
    NonPositiveComponent { component: &'static str, value: f64 },
    #[error("lyapunov weights are degenerate: {reason}")]
    DegenerateWeights { reason: &'static str },
    #[error(
        "equilibrium residual {residual:e} exceeds the certification bound {bound:e}"
    )]
    ResidualTooLarge { residual: f64, bound: f64 },
}

/// The nine epidemiological rates of the model.
///
/// `d_i` and `d_t` are the disease-induced death rates of the infectious and
/// treated compartments. All fields are per unit time except `beta`
/// (per individual per unit time) and the dimensionless fraction `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Recruitment rate into the susceptible compartment (individuals/time).
    pub lambda: f64,
    /// Transmission coefficient of the mass-action incidence `beta I S`.
    pub beta: f64,
    /// Natural death rate, applied in every compartment.
    pub mu: f64,
    /// Fraction of those leaving treatment who relapse straight to the
    /// infectious compartment; the remaining `1 - k` return to latency.
    pub k: f64,
    /// Rate at which treated individuals leave the treatment compartment.
    pub delta: f64,
    /// Rate at which latent individuals become infectious.
    pub epsilon: f64,
    /// Treatment uptake rate of infectious individuals.
    pub gamma: f64,
    /// Disease-induced death rate while infectious.
    pub d_i: f64,
    /// Disease-induced death rate while under treatment.
    pub d_t: f64,
}

impl ModelParams {
    /// Checks the parameter invariants: `lambda > 0`, `mu > 0`, every other
    /// rate finite and nonnegative, and `k` in `[0, 1]`.
    pub fn validate(&self) -> Result<(), TbError> {
        let positive: [(&'static str, f64); 2] = [("lambda", self.lambda), ("mu", self.mu)];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(TbError::InvalidParameter {
                    name,
                    value,
                    requirement: "finite and > 0",
                });
            }
        }
        let nonnegative: [(&'static str, f64); 6] = [
            ("beta", self.beta),
            ("delta", self.delta),
            ("epsilon", self.epsilon),
            ("gamma", self.gamma),
            ("d_i", self.d_i),
            ("d_t", self.d_t),
        ];
        for (name, value) in nonnegative {
            if !(value.is_finite() && value >= 0.0) {
                return Err(TbError::InvalidParameter {
                    name,
                    value,
                    requirement: "finite and >= 0",
                });
            }
        }
        if !(self.k.is_finite() && (0.0..=1.0).contains(&self.k)) {
            return Err(TbError::InvalidParameter {
                name: "k",
                value: self.k,
                requirement: "within [0, 1]",
            });
        }
        Ok(())
    }

    /// The composite exit rates of the latent, infectious, and treated
    /// compartments.
    pub fn composite_rates(&self) -> CompositeRates {
        CompositeRates {
            b1: self.mu + self.epsilon,
            b2: self.mu + self.gamma + self.d_i,
            b3: self.mu + self.delta + self.d_t,
        }
    }

    /// The basic reproduction number
    ///
    /// ```text
    /// R0 = beta epsilon b3 lambda / (mu b1 b2 b3 - mu delta gamma ((1-k) epsilon + k b1))
    /// ```
    ///
    /// Fails when the denominator is not positive, which signals a parameter
    /// regime in which the threshold formula is meaningless.
    pub fn basic_reproduction_number(&self) -> Result<f64, TbError> {
        self.validate()?;
        let CompositeRates { b1, b2, b3 } = self.composite_rates();
        let denominator = self.mu * b1 * b2 * b3
            - self.mu * self.delta * self.gamma * ((1.0 - self.k) * self.epsilon + self.k * b1);
        if !(denominator > 0.0) {
            return Err(TbError::NonPositiveThresholdDenominator { value: denominator });
        }
        Ok(self.beta * self.epsilon * b3 * self.lambda / denominator)
    }

    /// The disease-free equilibrium `(lambda/mu, 0, 0, 0)`.
    pub fn disease_free_equilibrium(&self) -> State {
        State::new(self.lambda / self.mu, 0.0, 0.0, 0.0)
    }

    /// The endemic equilibrium, present exactly when the reproduction
    /// number exceeds one:
    ///
    /// ```text
    /// I* = (mu/beta)(R0 - 1),        S* = lambda / (mu + beta I*),
    /// L* = (b2 - k delta gamma / b3) I* / epsilon,   T* = (gamma / b3) I*.
    /// ```
    ///
    /// Fails when `epsilon = 0` while `R0 > 1` would demand one (the latent
    /// balance divides by `epsilon`).
    pub fn endemic_equilibrium(&self) -> Result<Option<State>, TbError> {
        let r0 = self.basic_reproduction_number()?;
        if r0 <= 1.0 {
            return Ok(None);
        }
        if self.epsilon == 0.0 {
            return Err(TbError::DegenerateLatencyRate);
        }
        let CompositeRates { b2, b3, .. } = self.composite_rates();
        let i = self.mu / self.beta * (r0 - 1.0);
        let s = self.lambda / (self.mu + self.beta * i);
        let l = (b2 - self.k * self.delta * self.gamma / b3) * i / self.epsilon;
        let t = self.gamma / b3 * i;
        Ok(Some(State::new(s, l, i, t)))
    }
}

/// Composite exit rates `b1 = mu + epsilon`, `b2 = mu + gamma + d_i`,
/// `b3 = mu + delta + d_t`, derived via [`ModelParams::composite_rates`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositeRates {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

/// Population sizes of the four compartments.
///
/// Components are plain finite reals; nonnegativity is a property of model
/// trajectories (verified with tolerances by [`feasible_check`]), not a
/// construction-time constraint, so slightly negative solver output remains
/// inspectable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub s: f64,
    pub l: f64,
    pub i: f64,
    pub t: f64,
}

impl State {
    pub fn new(s: f64, l: f64, i: f64, t: f64) -> Self {
        Self { s, l, i, t }
    }

    /// Builds a state from a 4-component slice (as produced by the solver).
    ///
    /// # Panics
    /// Panics if the slice does not have exactly four components.
    pub fn from_slice(components: &[f64]) -> Self {
        match components {
            &[s, l, i, t] => Self { s, l, i, t },
            _ => panic!("a TB state has exactly 4 components, got {}", components.len()),
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.s, self.l, self.i, self.t]
    }

    /// The total population `S + L + I + T`.
    pub fn total_population(self) -> f64 {
        self.s + self.l + self.i + self.t
    }

    /// The largest component magnitude.
    pub fn max_norm(self) -> f64 {
        self.to_array().into_iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub(crate) fn ensure_finite(self) -> Result<(), TbError> {
        for (component, value) in self.named_components() {
            if !value.is_finite() {
                return Err(TbError::NonFiniteState { component });
            }
        }
        Ok(())
    }

    /// Components paired with their conventional compartment labels, in
    /// `S, L, I, T` order.
    pub fn named_components(self) -> [(&'static str, f64); 4] {
        [("S", self.s), ("L", self.l), ("I", self.i), ("T", self.t)]
    }
}

/// The model vector field, ready for the fractional solver.
///
/// Construction validates the parameters once; evaluation is then pure
/// arithmetic. [`TbDynamics::derivative`] is the checked entry point
/// (rejecting non-finite states); the [`Rhs`] implementation used inside
/// integration loops skips that check and relies on the solver's own
/// finiteness monitoring.
#[derive(Debug, Clone)]
pub struct TbDynamics {
    params: ModelParams,
    rates: CompositeRates,
}

impl TbDynamics {
    pub fn new(params: ModelParams) -> Result<Self, TbError> {
        params.validate()?;
        let rates = params.composite_rates();
        Ok(Self { params, rates })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Evaluates the vector field at `state`, rejecting non-finite input.
    pub fn derivative(&self, state: State) -> Result<[f64; 4], TbError> {
        state.ensure_finite()?;
        Ok(self.derivative_unchecked(state.to_array()))
    }

    fn derivative_unchecked(&self, [s, l, i, t]: [f64; 4]) -> [f64; 4] {
        let p = &self.params;
        let incidence = p.beta * i * s;
        [
            p.lambda - incidence - p.mu * s,
            incidence + (1.0 - p.k) * p.delta * t - self.rates.b1 * l,
            p.epsilon * l + p.k * p.delta * t - self.rates.b2 * i,
            p.gamma * i - self.rates.b3 * t,
        ]
    }

    /// Max-norm of the vector field at `state`.
    pub fn residual(&self, state: State) -> Result<f64, TbError> {
        let derivative = self.derivative(state)?;
        Ok(derivative.into_iter().fold(0.0, |acc, v| acc.max(v.abs())))
    }
}

impl Rhs for TbDynamics {
    fn dim(&self) -> usize {
        4
    }

    fn eval(&self, _time: f64, state: &[f64], derivative: &mut [f64]) {
        let output = self.derivative_unchecked([state[0], state[1], state[2], state[3]]);
        derivative.copy_from_slice(&output);
    }
}

/// Whether `state` lies in the bounded feasible region (all components
/// `>= -tol` and total population `<= lambda/mu + tol`).
pub fn feasible_check(state: State, params: &ModelParams, tol: f64) -> bool {
    let bound = params.lambda / params.mu + tol;
    state.to_array().into_iter().all(|v| v >= -tol) && state.total_population() <= bound
}

/// Both equilibria with their reproduction number and certified residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub r0: f64,
    pub dfe: State,
    /// Present exactly when `r0 > 1`.
    pub endemic: Option<State>,
    /// Max-norm of the vector field at the disease-free equilibrium.
    pub residual_dfe: f64,
    /// Max-norm of the vector field at the endemic equilibrium, when present.
    pub residual_endemic: Option<f64>,
}

impl EquilibriumReport {
    /// Computes the report and certifies each residual against
    /// [`RESIDUAL_RELATIVE_BOUND`] times `1 + max |component|`.
    pub fn compute(params: &ModelParams) -> Result<Self, TbError> {
        let dynamics = TbDynamics::new(*params)?;
        let r0 = params.basic_reproduction_number()?;

        let dfe = params.disease_free_equilibrium();
        let residual_dfe = dynamics.residual(dfe)?;
        certify_residual(residual_dfe, dfe)?;

        let endemic = params.endemic_equilibrium()?;
        let residual_endemic = match endemic {
            Some(point) => {
                let residual = dynamics.residual(point)?;
                certify_residual(residual, point)?;
                Some(residual)
            }
            None => None,
        };

        Ok(Self { r0, dfe, endemic, residual_dfe, residual_endemic })
    }
}

fn certify_residual(residual: f64, point: State) -> Result<(), TbError> {
    let bound = RESIDUAL_RELATIVE_BOUND * (1.0 + point.max_norm());
    if residual <= bound {
        Ok(())
    } else {
        Err(TbError::ResidualTooLarge { residual, bound })
    }
}

/// Weights of the Volterra-type Lyapunov function
///
/// ```text
/// V(x) = m1 (W(s; s*) + W(l; l*)) + m2 W(i; i*) + m3 W(t; t*),
/// W(x; x*) = x - x* - x* ln(x / x*),
/// ```
///
/// with `m1 = epsilon`, `m2 = b1`, and
/// `m3 = delta T* (b1 k + epsilon (1-k)) / (gamma I*)`. The weights are tied
/// to a specific endemic equilibrium; [`LyapunovWeights::value`] measures the
/// divergence of a state from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovWeights {
    m1: f64,
    m2: f64,
    m3: f64,
}

impl LyapunovWeights {
    /// Derives the weights for `params` at the endemic equilibrium
    /// `endemic`. Requires strictly positive equilibrium components and
    /// `gamma > 0` (the `m3` formula divides by both).
    pub fn new(params: &ModelParams, endemic: State) -> Result<Self, TbError> {
        params.validate()?;
        for (component, value) in endemic.named_components() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(TbError::NonPositiveComponent { component, value });
            }
        }
        if params.gamma == 0.0 {
            return Err(TbError::DegenerateWeights {
                reason: "gamma = 0 (no treatment flow to weigh)",
            });
        }
        let CompositeRates { b1, .. } = params.composite_rates();
        let m1 = params.epsilon;
        let m2 = b1;
        let m3 = params.delta * endemic.t * (b1 * params.k + params.epsilon * (1.0 - params.k))
            / (params.gamma * endemic.i);
        Ok(Self { m1, m2, m3 })
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }

    pub fn m3(&self) -> f64 {
        self.m3
    }

    /// The Lyapunov value of `state` relative to `endemic`.
    ///
    /// Zero exactly at the equilibrium, positive elsewhere; fails when any
    /// component of either state is not strictly positive (the logarithms
    /// are undefined there).
    pub fn value(&self, state: State, endemic: State) -> Result<f64, TbError> {
        for (component, value) in state
            .named_components()
            .into_iter()
            .chain(endemic.named_components())
        {
            if !(value > 0.0 && value.is_finite()) {
                return Err(TbError::NonPositiveComponent { component, value });
            }
        }
        let volterra = |x: f64, star: f64| x - star - star * (x / star).ln();
        Ok(self.m1 * (volterra(state.s, endemic.s) + volterra(state.l, endemic.l))
            + self.m2 * volterra(state.i, endemic.i)
            + self.m3 * volterra(state.t, endemic.t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference parameter set used widely in the tests: a regime whose
    /// reproduction number is far below one.
    fn reference_params() -> ModelParams {
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

    fn contagious_params() -> ModelParams {
        ModelParams { beta: 2e-2, ..reference_params() }
    }

    fn assert_rel(actual: f64, expected: f64, tolerance: f64) {
        let scale = expected.abs().max(f64::MIN_POSITIVE);
        let error = (actual - expected).abs() / scale;
        assert!(
            error <= tolerance,
            "actual {actual:e}, expected {expected:e}, relative error {error:e}"
        );
    }

    #[test]
    fn validation_accepts_the_reference_set_and_rejects_bad_fields() {
        assert!(reference_params().validate().is_ok());

        let cases = [
            (ModelParams { lambda: 0.0, ..reference_params() }, "lambda"),
            (ModelParams { mu: -0.1, ..reference_params() }, "mu"),
            (ModelParams { beta: f64::NAN, ..reference_params() }, "beta"),
            (ModelParams { k: 1.5, ..reference_params() }, "k"),
            (ModelParams { epsilon: -1e-9, ..reference_params() }, "epsilon"),
        ];
        for (params, field) in cases {
            match params.validate().unwrap_err() {
                TbError::InvalidParameter { name, .. } => assert_eq!(name, field),
                other => panic!("unexpected error {other:?}"),
            }
        }
    }

    #[test]
    fn composite_rates_are_the_documented_sums() {
        let rates = reference_params().composite_rates();
        assert_rel(rates.b1, 0.14668, 1e-15);
        assert_rel(rates.b2, 1.143, 1e-15);
        assert_rel(rates.b3, 1.693, 1e-15);

        let bare = ModelParams {
            lambda: 1.0,
            beta: 0.0,
            mu: 1.0,
            k: 0.0,
            delta: 0.0,
            epsilon: 0.0,
            gamma: 0.0,
            d_i: 0.0,
            d_t: 0.0,
        };
        assert_eq!(bare.composite_rates(), CompositeRates { b1: 1.0, b2: 1.0, b3: 1.0 });
    }

    #[test]
    fn reproduction_number_matches_high_precision_references() {
        // Twenty-digit oracle values computed independently.
        assert_rel(
            reference_params().basic_reproduction_number().unwrap(),
            6.7086374300012110778e-3,
            1e-13,
        );
        assert_rel(
            contagious_params().basic_reproduction_number().unwrap(),
            2.6834549720004844311,
            1e-13,
        );
        let no_spread = ModelParams { beta: 0.0, ..reference_params() };
        assert_eq!(no_spread.basic_reproduction_number().unwrap(), 0.0);
    }

    #[test]
    fn reproduction_number_denominator_is_positive_across_extreme_regimes() {
        // b2 > gamma, b3 > delta, and epsilon < b1 force the denominator
        // positive for every validated parameter set, so the threshold is
        // well defined even at extreme relapse/treatment rates. (The
        // denominator guard in the implementation is purely defensive.)
        let extremes = [
            ModelParams { delta: 5e3, gamma: 5e3, k: 1.0, ..reference_params() },
            ModelParams { delta: 1e6, gamma: 1e6, k: 1.0, epsilon: 1e6, ..reference_params() },
            ModelParams { mu: 1e-12, ..reference_params() },
        ];
        for params in extremes {
            assert!(params.basic_reproduction_number().is_ok());
        }
    }

    #[test]
    fn disease_free_equilibrium_annihilates_the_field_exactly() {
        let params = reference_params();
        let dfe = params.disease_free_equilibrium();
        assert_rel(dfe.s, 5544.4552447552447552, 1e-15);
        assert_eq!((dfe.l, dfe.i, dfe.t), (0.0, 0.0, 0.0));

        let dynamics = TbDynamics::new(params).unwrap();
        assert_eq!(dynamics.derivative(dfe).unwrap(), [0.0; 4]);
    }

    #[test]
    fn vector_field_matches_a_hand_substituted_point() {
        let params = reference_params();
        let dynamics = TbDynamics::new(params).unwrap();
        let seeded = State::new(params.lambda / params.mu, 0.0, 1.0, 0.0);
        let [ds, dl, di, dt] = dynamics.derivative(seeded).unwrap();
        let CompositeRates { b2, .. } = params.composite_rates();
        // ds cancels the recruitment term against the natural deaths, which
        // costs a few ulp of lambda relative to the small remainder.
        assert_rel(ds, -params.beta * params.lambda / params.mu, 2e-12);
        assert_rel(dl, params.beta * params.lambda / params.mu, 1e-14);
        assert_rel(di, -b2, 1e-14);
        assert_rel(dt, params.gamma, 1e-14);
    }

    #[test]
    fn vector_field_rejects_non_finite_states() {
        let dynamics = TbDynamics::new(reference_params()).unwrap();
        let bad = State::new(1.0, f64::INFINITY, 1.0, 1.0);
        assert_eq!(
            dynamics.derivative(bad),
            Err(TbError::NonFiniteState { component: "L" })
        );
    }

    #[test]
    fn endemic_equilibrium_exists_only_above_threshold() {
        assert_eq!(reference_params().endemic_equilibrium().unwrap(), None);

        let endemic = contagious_params().endemic_equilibrium().unwrap().unwrap();
        assert_rel(endemic.s, 2066.1629513469786076, 1e-12);
        assert_rel(endemic.l, 3434.2868500455178674, 1e-12);
        assert_rel(endemic.i, 12.036703049803463682, 1e-12);
        assert_rel(endemic.t, 4.9767821233682366082, 1e-12);

        let residual = TbDynamics::new(contagious_params())
            .unwrap()
            .residual(endemic)
            .unwrap();
        assert!(residual <= RESIDUAL_RELATIVE_BOUND * (1.0 + endemic.max_norm()));
    }

    #[test]
    fn endemic_equilibrium_requires_latency_progression() {
        // epsilon = 0 kills the numerator of R0, so force the threshold
        // question directly: such a regime cannot cross it.
        let degenerate = ModelParams { epsilon: 0.0, ..contagious_params() };
        assert_eq!(degenerate.endemic_equilibrium().unwrap(), None);
    }

    #[test]
    fn equilibrium_report_certifies_residuals() {
        let report = EquilibriumReport::compute(&reference_params()).unwrap();
        assert!(report.r0 < 1.0);
        assert_eq!(report.endemic, None);
        assert_eq!(report.residual_endemic, None);
        assert_eq!(report.residual_dfe, 0.0);

        let report = EquilibriumReport::compute(&contagious_params()).unwrap();
        assert!(report.r0 > 1.0);
        assert!(report.endemic.is_some());
        let residual = report.residual_endemic.unwrap();
        assert!(residual <= RESIDUAL_RELATIVE_BOUND * (1.0 + report.endemic.unwrap().max_norm()));
    }

    #[test]
    fn feasibility_is_a_tolerance_band_around_the_region() {
        let params = reference_params();
        let dfe = params.disease_free_equilibrium();
        assert!(feasible_check(dfe, &params, 0.0));
        assert!(!feasible_check(State::new(dfe.s, 1.0, 0.0, 0.0), &params, 0.0));
        assert!(feasible_check(State::new(dfe.s, 1.0, 0.0, 0.0), &params, 1.5));
        assert!(!feasible_check(State::new(-1.0, 0.0, 0.0, 0.0), &params, 1e-3));
        assert!(feasible_check(State::new(-1e-9, 1.0, 2.0, 3.0), &params, 1e-6));
    }

    #[test]
    fn total_population_sums_components() {
        assert_eq!(State::new(1.0, 1.0, 1.0, 1.0).total_population(), 4.0);
        assert_eq!(State::new(0.8, 0.05, 0.1, 0.05).total_population(), 1.0);
    }

    #[test]
    fn lyapunov_weights_match_their_formulas() {
        let params = contagious_params();
        let endemic = params.endemic_equilibrium().unwrap().unwrap();
        let weights = LyapunovWeights::new(&params, endemic).unwrap();
        assert_eq!(weights.m1(), params.epsilon);
        assert_rel(weights.m2(), 0.14668, 1e-15);
        assert_rel(weights.m3(), 0.022265209686946249262, 1e-13);

        // Limiting relapse fractions reduce m3 to single-term forms.
        let rates = params.composite_rates();
        let all_relapse = ModelParams { k: 1.0, ..params };
        let w = LyapunovWeights::new(&all_relapse, endemic).unwrap();
        assert_rel(
            w.m3(),
            all_relapse.delta * endemic.t * rates.b1 / (all_relapse.gamma * endemic.i),
            1e-14,
        );
        let no_relapse = ModelParams { k: 0.0, ..params };
        let w = LyapunovWeights::new(&no_relapse, endemic).unwrap();
        assert_rel(
            w.m3(),
            no_relapse.delta * endemic.t * no_relapse.epsilon / (no_relapse.gamma * endemic.i),
            1e-14,
        );
    }

    #[test]
    fn lyapunov_weights_reject_degenerate_inputs() {
        let params = contagious_params();
        let endemic = params.endemic_equilibrium().unwrap().unwrap();
        assert!(matches!(
            LyapunovWeights::new(&ModelParams { gamma: 0.0, ..params }, endemic),
            Err(TbError::DegenerateWeights { .. })
        ));
        let flat = State::new(1.0, 1.0, 0.0, 1.0);
        assert!(matches!(
            LyapunovWeights::new(&params, flat),
            Err(TbError::NonPositiveComponent { component: "I", .. })
        ));
    }

    #[test]
    fn lyapunov_value_is_zero_at_the_equilibrium_and_matches_closed_forms() {
        let params = contagious_params();
        let endemic = params.endemic_equilibrium().unwrap().unwrap();
        let weights = LyapunovWeights::new(&params, endemic).unwrap();

        assert_eq!(weights.value(endemic, endemic).unwrap(), 0.0);

        // Doubling every component gives (m1 (s*+l*) + m2 i* + m3 t*)(1 - ln 2).
        let doubled = State::new(2.0 * endemic.s, 2.0 * endemic.l, 2.0 * endemic.i, 2.0 * endemic.t);
        assert_rel(
            weights.value(doubled, endemic).unwrap(),
            6.7869731059959664583,
            1e-12,
        );

        // The reference initial condition, against the same equilibrium.
        let initial = State::new(0.8, 0.05, 0.1, 0.05);
        assert_rel(
            weights.value(initial, endemic).unwrap(),
            187.36114887203639866,
            1e-12,
        );

        assert!(matches!(
            weights.value(State::new(1.0, -1.0, 1.0, 1.0), endemic),
            Err(TbError::NonPositiveComponent { component: "L", .. })
        ));
    }
}

//! Fractional-order modeling toolkit built around a Caputo
//! predictor-corrector solver and a four-compartment tuberculosis model.
//!
//! The crate is organized in four layers:
//!
//! - [`special`]: the gamma function and the one-parameter Mittag-Leffler
//!   function, with explicit domains and error reporting.
//! - [`solver`]: a fixed-step Adams-Bashforth-Moulton scheme for Caputo
//!   systems of order in `(0, 1]` (the classical case `1` included), with
//!   exposed quadrature weights and deterministic, reproducible output.
//! - [`tb`]: the epidemiological model — vector field, reproduction number,
//!   equilibria, feasible region, and a Volterra-type Lyapunov function.
//! - [`scenarios`]: packaged experiments (order sweeps, Lyapunov series,
//!   convergence studies, attraction checks) plus the reference presets.
//!
//! # Example
//!
//! ```
//! use fractb::order::FractionalOrder;
//! use fractb::scenarios::{endemic_scenario, run_single};
//!
//! let spec = endemic_scenario();
//! let order = FractionalOrder::new(0.9).unwrap();
//! // Integrate a short prefix of the endemic scenario.
//! let spec = fractb::scenarios::ScenarioSpec::new(
//!     *spec.params(),
//!     spec.initial(),
//!     vec![order],
//!     spec.step_size(),
//!     1.0,
//! )
//! .unwrap();
//! let trajectory = run_single(&spec, order).unwrap();
//! assert_eq!(trajectory.dim(), 4);
//! assert_eq!(trajectory.len(), spec.step_count() + 1);
//! ```

pub mod order;
pub mod scenarios;
pub mod solver;
pub mod special;
pub mod tb;

pub use order::FractionalOrder;
pub use solver::{SolverConfig, Trajectory};
pub use tb::{ModelParams, State};

//! Command-line front end for the `fractb` toolkit.
//!
//! The binary exposes six subcommands:
//!
//! - `simulate` — integrate the TB model at one fractional order, CSV out;
//! - `equilibria` — print the JSON equilibrium report for a configuration;
//! - `sweep` — integrate every configured order, writing per-order CSVs and
//!   per-compartment SVG charts;
//! - `lyapunov` — emit the Lyapunov time series of one run as `t,V` CSV;
//! - `convergence` — run a step-refinement study on a benchmark problem;
//! - `plot` — render any CSV produced by this tool as an SVG line chart.
//!
//! All emitted CSV and JSON re-parses losslessly through this crate's own
//! readers, and equal inputs always produce byte-identical outputs.

pub mod chart;
pub mod commands;
pub mod config;
pub mod csv_io;
pub mod report;

pub use commands::{run, Cli, CliError};

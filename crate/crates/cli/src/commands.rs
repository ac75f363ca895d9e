//! Subcommand definitions and dispatch.

use crate::chart::{render_line_chart, ChartError, Series};
use crate::config::{parse_config, ConfigError};
use crate::csv_io::{
    parse_csv, render_convergence_csv, render_lyapunov_csv, render_trajectory_csv, CsvError,
};
use crate::report::render_equilibrium_report;
use clap::{Parser, Subcommand, ValueEnum};
use fractb::order::{FractionalOrder, InvalidOrder};
use fractb::scenarios::{
    convergence_study, endemic_reference, lyapunov_series, run_alpha_sweep, run_single,
    BenchmarkProblem, ScenarioError, ScenarioSpec,
};
use fractb::tb::{EquilibriumReport, TbError};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Step sizes used by the `convergence` subcommand: 2^-5, 2^-6, 2^-7.
pub const CONVERGENCE_STEP_SIZES: [f64; 3] = [0.03125, 0.015625, 0.0078125];
/// Final time of the `convergence` subcommand's benchmark runs.
pub const CONVERGENCE_FINAL_TIME: f64 = 1.0;

const COMPARTMENTS: [&str; 4] = ["S", "L", "I", "T"];

/// Fractional TB model toolkit: simulate, analyze, and chart.
#[derive(Debug, Parser)]
#[command(name = "fractb", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate the model at one fractional order and write a CSV series.
    Simulate {
        /// Path of the JSON configuration.
        #[arg(long)]
        config: PathBuf,
        /// Fractional order in (0, 1].
        #[arg(long)]
        alpha: f64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the equilibrium report (JSON) for a configuration.
    Equilibria {
        /// Path of the JSON configuration.
        #[arg(long)]
        config: PathBuf,
    },
    /// Integrate once per configured order; write per-order CSVs and
    /// per-compartment SVG charts into a directory.
    Sweep {
        /// Path of the JSON configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the Lyapunov time series of one run as a CSV.
    Lyapunov {
        /// Path of the JSON configuration.
        #[arg(long)]
        config: PathBuf,
        /// Fractional order in (0, 1].
        #[arg(long)]
        alpha: f64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a step-size refinement study on a benchmark problem.
    Convergence {
        /// Benchmark problem to integrate.
        #[arg(long)]
        problem: ProblemArg,
        /// Fractional order in (0, 1].
        #[arg(long)]
        alpha: f64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a CSV produced by this tool as an SVG line chart.
    Plot {
        /// Input CSV path.
        #[arg(long = "in")]
        input: PathBuf,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
    },
}

/// Benchmark selector for `convergence`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    /// Forced problem with exact solution t^2.
    #[value(name = "power_law")]
    PowerLaw,
    /// Linear decay with a Mittag-Leffler exact solution.
    #[value(name = "linear_ml")]
    LinearMl,
}

impl From<ProblemArg> for BenchmarkProblem {
    fn from(problem: ProblemArg) -> Self {
        match problem {
            ProblemArg::PowerLaw => BenchmarkProblem::PowerLaw,
            ProblemArg::LinearMl => BenchmarkProblem::LinearMittagLeffler,
        }
    }
}

/// Anything a subcommand can fail with; rendered on stderr by `main`.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    ReadFile { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    WriteFile { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Order(#[from] InvalidOrder),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Model(#[from] TbError),
    #[error(transparent)]
    Csv(#[from] CsvError),
    #[error(transparent)]
    Chart(#[from] ChartError),
}

/// Executes a parsed command line.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { config, alpha, out } => {
            let spec = load_config(&config)?;
            let order = FractionalOrder::new(alpha)?;
            let trajectory = run_single(&spec, order)?;
            write_file(&out, &render_trajectory_csv(&trajectory))
        }
        Command::Equilibria { config } => {
            let spec = load_config(&config)?;
            let report = EquilibriumReport::compute(spec.params())?;
            print!("{}", render_equilibrium_report(&report));
            Ok(())
        }
        Command::Sweep { config, out } => {
            let spec = load_config(&config)?;
            run_sweep(&spec, &out)
        }
        Command::Lyapunov { config, alpha, out } => {
            let spec = load_config(&config)?;
            let order = FractionalOrder::new(alpha)?;
            let (endemic, weights) = endemic_reference(spec.params())?;
            let trajectory = run_single(&spec, order)?;
            let series = lyapunov_series(&trajectory, endemic, &weights)?;
            write_file(&out, &render_lyapunov_csv(&series))
        }
        Command::Convergence { problem, alpha, out } => {
            let order = FractionalOrder::new(alpha)?;
            let rows = convergence_study(
                problem.into(),
                order,
                &CONVERGENCE_STEP_SIZES,
                CONVERGENCE_FINAL_TIME,
            )?;
            write_file(&out, &render_convergence_csv(&rows))
        }
        Command::Plot { input, out } => {
            let text = read_file(&input)?;
            let svg = plot_document(&text, &input)?;
            write_file(&out, &svg)
        }
    }
}

fn load_config(path: &Path) -> Result<ScenarioSpec, CliError> {
    let text = read_file(path)?;
    Ok(parse_config(&text)?)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|source| CliError::ReadFile { path: path.to_path_buf(), source })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|source| CliError::WriteFile { path: path.to_path_buf(), source })
}

fn run_sweep(spec: &ScenarioSpec, directory: &Path) -> Result<(), CliError> {
    fs::create_dir_all(directory)
        .map_err(|source| CliError::WriteFile { path: directory.to_path_buf(), source })?;
    let sweep = run_alpha_sweep(spec)?;

    for (order, trajectory) in &sweep {
        let path = directory.join(format!("traj_alpha_{order}.csv"));
        write_file(&path, &render_trajectory_csv(trajectory))?;
    }

    for (component, name) in COMPARTMENTS.into_iter().enumerate() {
        let series: Vec<Series> = sweep
            .iter()
            .map(|(order, trajectory)| Series {
                label: format!("α={order}"),
                points: trajectory
                    .times()
                    .iter()
                    .copied()
                    .zip(trajectory.component(component))
                    .collect(),
            })
            .collect();
        let svg = render_line_chart(&series, &format!("{name} compartment"), "t", name)?;
        write_file(&directory.join(format!("sweep_{name}.svg")), &svg)?;
    }
    Ok(())
}

/// Turns a CSV document into a chart: column 0 is the x axis, every other
/// column becomes a series labeled by its header. Rows with non-finite
/// coordinates are skipped and points are drawn in ascending x order.
fn plot_document(text: &str, input: &Path) -> Result<String, CliError> {
    let table = parse_csv(text)?;
    let x_label = table.header[0].clone();

    let mut series = Vec::with_capacity(table.header.len().saturating_sub(1));
    for (column, label) in table.header.iter().enumerate().skip(1) {
        let mut points: Vec<(f64, f64)> = table
            .rows
            .iter()
            .map(|row| (row[0], row[column]))
            .filter(|&(x, y)| x.is_finite() && y.is_finite())
            .collect();
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        series.push(Series { label: label.clone(), points });
    }

    let title = input
        .file_stem()
        .map(|stem| stem.to_string_lossy().into_owned())
        .unwrap_or_else(|| String::from("series"));
    let y_label = if series.len() == 1 { series[0].label.clone() } else { String::from("value") };
    Ok(render_line_chart(&series, &title, &x_label, &y_label)?)
}

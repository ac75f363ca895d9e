//! CSV emission and parsing with stable, locale-independent formatting.
//!
//! Every writer renders numbers in scientific notation with 17 significant
//! digits, enough to reproduce the exact `f64` bit pattern on re-parse, so
//! round-trips through these readers are lossless. Lines end with a single
//! line feed and the final line is terminated.

use fractb::scenarios::ConvergenceRow;
use fractb::solver::Trajectory;
use std::fmt::Write as _;
use std::num::ParseFloatError;
use thiserror::Error;

/// Header of 4-compartment trajectory files.
pub const TRAJECTORY_HEADER: &str = "t,S,L,I,T";
/// Header of Lyapunov time-series files.
pub const LYAPUNOV_HEADER: &str = "t,V";
/// Header of convergence-study tables.
pub const CONVERGENCE_HEADER: &str = "h,error,estimated_order";

/// Problems encountered while reading a CSV document.
#[derive(Debug, Error)]
pub enum CsvError {
    #[error("the document is empty")]
    Empty,
    #[error("the table has a header but no data rows")]
    NoRows,
    #[error("expected header `{expected}`, found `{found}`")]
    HeaderMismatch { expected: &'static str, found: String },
    #[error("line {line}: expected {expected} fields, found {found}")]
    RaggedRow { line: usize, expected: usize, found: usize },
    #[error("line {line}, field {field}: cannot parse `{text}` as a number: {source}")]
    BadNumber {
        line: usize,
        field: usize,
        text: String,
        source: ParseFloatError,
    },
}

/// Scientific notation with 17 significant digits (16 after the point).
pub fn format_number(value: f64) -> String {
    format!("{value:.16e}")
}

fn push_row(sink: &mut String, values: &[f64]) {
    for (index, value) in values.iter().enumerate() {
        if index > 0 {
            sink.push(',');
        }
        let _ = write!(sink, "{}", format_number(*value));
    }
    sink.push('\n');
}

/// Renders a 4-compartment trajectory as `t,S,L,I,T` rows.
///
/// # Panics
/// Panics when the trajectory is not 4-dimensional.
pub fn render_trajectory_csv(trajectory: &Trajectory) -> String {
    assert_eq!(trajectory.dim(), 4, "trajectory CSV requires the 4 compartments");
    let mut sink = String::with_capacity(96 * (trajectory.len() + 1));
    sink.push_str(TRAJECTORY_HEADER);
    sink.push('\n');
    for (time, state) in trajectory.iter() {
        push_row(&mut sink, &[time, state[0], state[1], state[2], state[3]]);
    }
    sink
}

/// Renders a Lyapunov time series as `t,V` rows.
pub fn render_lyapunov_csv(series: &[(f64, f64)]) -> String {
    let mut sink = String::with_capacity(48 * (series.len() + 1));
    sink.push_str(LYAPUNOV_HEADER);
    sink.push('\n');
    for &(time, value) in series {
        push_row(&mut sink, &[time, value]);
    }
    sink
}

/// Renders a convergence study as `h,error,estimated_order` rows; a missing
/// order estimate (the first refinement level) is written as `NaN`.
pub fn render_convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut sink = String::with_capacity(72 * (rows.len() + 1));
    sink.push_str(CONVERGENCE_HEADER);
    sink.push('\n');
    for row in rows {
        push_row(
            &mut sink,
            &[row.step_size, row.error, row.estimated_order.unwrap_or(f64::NAN)],
        );
    }
    sink
}

/// A parsed CSV document: one header line and numeric rows of equal arity.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Parses a CSV document with a header line and all-numeric data rows.
pub fn parse_csv(text: &str) -> Result<CsvTable, CsvError> {
    let mut lines = text.lines();
    let header_line = lines.next().filter(|line| !line.is_empty()).ok_or(CsvError::Empty)?;
    let header: Vec<String> = header_line.split(',').map(|field| field.trim().to_string()).collect();

    let mut rows = Vec::new();
    for (offset, line) in lines.enumerate() {
        let line_number = offset + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            return Err(CsvError::RaggedRow {
                line: line_number,
                expected: header.len(),
                found: fields.len(),
            });
        }
        let mut row = Vec::with_capacity(fields.len());
        for (index, field) in fields.iter().enumerate() {
            let text = field.trim();
            let value = text.parse::<f64>().map_err(|source| CsvError::BadNumber {
                line: line_number,
                field: index + 1,
                text: text.to_string(),
                source,
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CsvError::NoRows);
    }
    Ok(CsvTable { header, rows })
}

fn expect_header(table: &CsvTable, expected: &'static str) -> Result<(), CsvError> {
    let found = table.header.join(",");
    if found == expected {
        Ok(())
    } else {
        Err(CsvError::HeaderMismatch { expected, found })
    }
}

/// Reads a trajectory file back as `(time, [s, l, i, t])` rows.
pub fn parse_trajectory_csv(text: &str) -> Result<Vec<(f64, [f64; 4])>, CsvError> {
    let table = parse_csv(text)?;
    expect_header(&table, TRAJECTORY_HEADER)?;
    Ok(table
        .rows
        .into_iter()
        .map(|row| (row[0], [row[1], row[2], row[3], row[4]]))
        .collect())
}

/// Reads a Lyapunov series file back as `(time, value)` pairs.
pub fn parse_lyapunov_csv(text: &str) -> Result<Vec<(f64, f64)>, CsvError> {
    let table = parse_csv(text)?;
    expect_header(&table, LYAPUNOV_HEADER)?;
    Ok(table.rows.into_iter().map(|row| (row[0], row[1])).collect())
}

/// Reads a convergence table back; `NaN` order estimates become `None`.
pub fn parse_convergence_csv(text: &str) -> Result<Vec<ConvergenceRow>, CsvError> {
    let table = parse_csv(text)?;
    expect_header(&table, CONVERGENCE_HEADER)?;
    Ok(table
        .rows
        .into_iter()
        .map(|row| ConvergenceRow {
            step_size: row[0],
            error: row[1],
            estimated_order: if row[2].is_nan() { None } else { Some(row[2]) },
        })
        .collect())
}

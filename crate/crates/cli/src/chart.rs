//! Deterministic, self-contained SVG 1.1 line charts.
//!
//! The renderer embeds no timestamps, random identifiers, or
//! locale-dependent formatting, so equal inputs always produce identical
//! bytes. Output is a single 800x500 document with axes, tick labels, one
//! polyline per series, and a legend.

use std::fmt::Write as _;
use thiserror::Error;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const PLOT_LEFT: f64 = 80.0;
const PLOT_RIGHT: f64 = 630.0;
const PLOT_TOP: f64 = 48.0;
const PLOT_BOTTOM: f64 = 440.0;
const TICK_TARGET: usize = 5;
const PALETTE: [&str; 6] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// One labeled sequence of points with ascending x coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Inputs the renderer refuses to draw.
#[derive(Debug, Error)]
pub enum ChartError {
    #[error("at least one series is required")]
    NoSeries,
    #[error("series `{0}` has no points")]
    EmptySeries(String),
    #[error("series `{0}` contains a non-finite coordinate")]
    NonFinitePoint(String),
    #[error("series `{0}` must have ascending x coordinates")]
    NonAscendingX(String),
}

/// Renders the series as a standalone SVG document.
pub fn render_line_chart(
    series: &[Series],
    title: &str,
    x_label: &str,
    y_label: &str,
) -> Result<String, ChartError> {
    if series.is_empty() {
        return Err(ChartError::NoSeries);
    }
    for entry in series {
        if entry.points.is_empty() {
            return Err(ChartError::EmptySeries(entry.label.clone()));
        }
        if entry
            .points
            .iter()
            .any(|&(x, y)| !(x.is_finite() && y.is_finite()))
        {
            return Err(ChartError::NonFinitePoint(entry.label.clone()));
        }
        if entry.points.windows(2).any(|pair| pair[1].0 < pair[0].0) {
            return Err(ChartError::NonAscendingX(entry.label.clone()));
        }
    }

    let (x_min, x_max) = padded_range(extent(series, |&(x, _)| x));
    let (y_min, y_max) = padded_range(extent(series, |&(_, y)| y));
    let x_scale = (PLOT_RIGHT - PLOT_LEFT) / (x_max - x_min);
    let y_scale = (PLOT_BOTTOM - PLOT_TOP) / (y_max - y_min);
    let to_px = |x: f64| PLOT_LEFT + (x - x_min) * x_scale;
    let to_py = |y: f64| PLOT_BOTTOM - (y - y_min) * y_scale;

    let mut svg = String::with_capacity(4096);
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"Menlo, Consolas, monospace\" font-size=\"12\">"
    );
    let _ = writeln!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>"
    );
    let _ = writeln!(
        svg,
        "<text x=\"{:.3}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>",
        (PLOT_LEFT + PLOT_RIGHT) / 2.0,
        escape_xml(title)
    );

    // Grid lines and tick labels.
    svg.push_str("<g stroke=\"#d9d9d9\" stroke-width=\"1\">\n");
    for tick in ticks(x_min, x_max) {
        let px = to_px(tick);
        let _ = writeln!(
            svg,
            "<line x1=\"{px:.3}\" y1=\"{PLOT_TOP}\" x2=\"{px:.3}\" y2=\"{PLOT_BOTTOM}\"/>"
        );
    }
    for tick in ticks(y_min, y_max) {
        let py = to_py(tick);
        let _ = writeln!(
            svg,
            "<line x1=\"{PLOT_LEFT}\" y1=\"{py:.3}\" x2=\"{PLOT_RIGHT}\" y2=\"{py:.3}\"/>"
        );
    }
    svg.push_str("</g>\n");

    for tick in ticks(x_min, x_max) {
        let _ = writeln!(
            svg,
            "<text x=\"{:.3}\" y=\"{:.3}\" text-anchor=\"middle\">{}</text>",
            to_px(tick),
            PLOT_BOTTOM + 18.0,
            tick_label(tick)
        );
    }
    for tick in ticks(y_min, y_max) {
        let _ = writeln!(
            svg,
            "<text x=\"{:.3}\" y=\"{:.3}\" text-anchor=\"end\">{}</text>",
            PLOT_LEFT - 8.0,
            to_py(tick) + 4.0,
            tick_label(tick)
        );
    }

    // Axes.
    let _ = writeln!(
        svg,
        "<g stroke=\"#000000\" stroke-width=\"1.5\">\
         <line x1=\"{PLOT_LEFT}\" y1=\"{PLOT_BOTTOM}\" x2=\"{PLOT_RIGHT}\" y2=\"{PLOT_BOTTOM}\"/>\
         <line x1=\"{PLOT_LEFT}\" y1=\"{PLOT_TOP}\" x2=\"{PLOT_LEFT}\" y2=\"{PLOT_BOTTOM}\"/>\
         </g>"
    );
    let _ = writeln!(
        svg,
        "<text x=\"{:.3}\" y=\"{:.3}\" text-anchor=\"middle\">{}</text>",
        (PLOT_LEFT + PLOT_RIGHT) / 2.0,
        PLOT_BOTTOM + 44.0,
        escape_xml(x_label)
    );
    let _ = writeln!(
        svg,
        "<text x=\"20\" y=\"{:.3}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 20 {:.3})\">{}</text>",
        (PLOT_TOP + PLOT_BOTTOM) / 2.0,
        (PLOT_TOP + PLOT_BOTTOM) / 2.0,
        escape_xml(y_label)
    );

    // Data polylines.
    for (index, entry) in series.iter().enumerate() {
        let color = PALETTE[index % PALETTE.len()];
        let mut points = String::with_capacity(16 * entry.points.len());
        for (position, &(x, y)) in entry.points.iter().enumerate() {
            if position > 0 {
                points.push(' ');
            }
            let _ = write!(points, "{:.3},{:.3}", to_px(x), to_py(y));
        }
        let _ = writeln!(
            svg,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{points}\"/>"
        );
    }

    // Legend.
    for (index, entry) in series.iter().enumerate() {
        let color = PALETTE[index % PALETTE.len()];
        let y = PLOT_TOP + 16.0 * index as f64;
        let _ = writeln!(
            svg,
            "<line x1=\"{:.3}\" y1=\"{y:.3}\" x2=\"{:.3}\" y2=\"{y:.3}\" \
             stroke=\"{color}\" stroke-width=\"3\"/>",
            PLOT_RIGHT + 14.0,
            PLOT_RIGHT + 38.0,
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.3}\" y=\"{:.3}\">{}</text>",
            PLOT_RIGHT + 44.0,
            y + 4.0,
            escape_xml(&entry.label)
        );
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn extent<F>(series: &[Series], pick: F) -> (f64, f64)
where
    F: Fn(&(f64, f64)) -> f64 + Copy,
{
    let mut low = f64::INFINITY;
    let mut high = f64::NEG_INFINITY;
    for entry in series {
        for point in &entry.points {
            low = low.min(pick(point));
            high = high.max(pick(point));
        }
    }
    (low, high)
}

/// Widens a degenerate (zero-span) range so scales stay finite.
fn padded_range((low, high): (f64, f64)) -> (f64, f64) {
    if low < high {
        (low, high)
    } else {
        let pad = 0.5 * low.abs().max(1.0);
        (low - pad, high + pad)
    }
}

/// A 1-2-5 "nice step" covering the span in about `TICK_TARGET` intervals.
fn nice_step(span: f64) -> f64 {
    let raw = span / TICK_TARGET as f64;
    let magnitude = 10f64.powf(raw.log10().floor());
    let normalized = raw / magnitude;
    let factor = if normalized <= 1.0 {
        1.0
    } else if normalized <= 2.0 {
        2.0
    } else if normalized <= 5.0 {
        5.0
    } else {
        10.0
    };
    factor * magnitude
}

/// Tick positions as exact multiples of the nice step inside `[low, high]`.
fn ticks(low: f64, high: f64) -> Vec<f64> {
    let step = nice_step(high - low);
    let first = (low / step).ceil() as i64;
    let last = (high / step).floor() as i64;
    (first..=last).map(|index| index as f64 * step).collect()
}

fn tick_label(value: f64) -> String {
    if value == 0.0 {
        return String::from("0");
    }
    let magnitude = value.abs();
    if !(1e-4..1e6).contains(&magnitude) {
        return format!("{value:.3e}");
    }
    let rendered = format!("{value:.6}");
    let trimmed = rendered.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}

fn escape_xml(text: &str) -> String {
    let mut escaped = String::with_capacity(text.len());
    for character in text.chars() {
        match character {
            '&' => escaped.push_str("&amp;"),
            '<' => escaped.push_str("&lt;"),
            '>' => escaped.push_str("&gt;"),
            '"' => escaped.push_str("&quot;"),
            '\'' => escaped.push_str("&apos;"),
            other => escaped.push(other),
        }
    }
    escaped
}

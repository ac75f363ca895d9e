//! Equilibrium reports as JSON documents with a fixed key order.
//!
//! The document shape is
//! `{"r0": …, "dfe": [4 numbers], "endemic": [4 numbers] | null,
//!   "residual_dfe": …, "residual_endemic": … | null}`
//! with keys in exactly that order and numbers carrying 17 significant
//! digits, so equal reports serialize to identical bytes.

use crate::csv_io::format_number;
use fractb::tb::EquilibriumReport;
use serde::Deserialize;
use thiserror::Error;

/// A report read back from JSON (field order is irrelevant on input).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParsedReport {
    pub r0: f64,
    pub dfe: [f64; 4],
    pub endemic: Option<[f64; 4]>,
    pub residual_dfe: f64,
    pub residual_endemic: Option<f64>,
}

/// A malformed report document.
#[derive(Debug, Error)]
#[error("cannot parse equilibrium report: {0}")]
pub struct ReportParseError(#[from] serde_json::Error);

fn push_array(sink: &mut String, values: [f64; 4]) {
    sink.push('[');
    for (index, value) in values.into_iter().enumerate() {
        if index > 0 {
            sink.push(',');
        }
        sink.push_str(&format_number(value));
    }
    sink.push(']');
}

/// Serializes the report, ending with a single line feed.
pub fn render_equilibrium_report(report: &EquilibriumReport) -> String {
    let mut sink = String::with_capacity(256);
    sink.push_str("{\"r0\":");
    sink.push_str(&format_number(report.r0));
    sink.push_str(",\"dfe\":");
    push_array(&mut sink, report.dfe.to_array());
    sink.push_str(",\"endemic\":");
    match report.endemic {
        Some(state) => push_array(&mut sink, state.to_array()),
        None => sink.push_str("null"),
    }
    sink.push_str(",\"residual_dfe\":");
    sink.push_str(&format_number(report.residual_dfe));
    sink.push_str(",\"residual_endemic\":");
    match report.residual_endemic {
        Some(residual) => sink.push_str(&format_number(residual)),
        None => sink.push_str("null"),
    }
    sink.push_str("}\n");
    sink
}

/// Reads a rendered report back.
pub fn parse_equilibrium_report(text: &str) -> Result<ParsedReport, ReportParseError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fractb::scenarios::{baseline_params, endemic_params};

    #[test]
    fn keys_appear_in_the_contracted_order() {
        let report = EquilibriumReport::compute(&endemic_params()).unwrap();
        let rendered = render_equilibrium_report(&report);
        let positions: Vec<usize> = ["\"r0\"", "\"dfe\"", "\"endemic\"", "\"residual_dfe\"", "\"residual_endemic\""]
            .iter()
            .map(|key| rendered.find(key).expect("key present"))
            .collect();
        assert!(positions.windows(2).all(|pair| pair[0] < pair[1]));
        assert!(rendered.starts_with("{\"r0\":"));
        assert!(rendered.ends_with("}\n"));
    }

    #[test]
    fn subcritical_reports_have_null_endemic_entries() {
        let report = EquilibriumReport::compute(&baseline_params()).unwrap();
        let rendered = render_equilibrium_report(&report);
        assert!(rendered.contains("\"endemic\":null"));
        assert!(rendered.contains("\"residual_endemic\":null"));

        let parsed = parse_equilibrium_report(&rendered).unwrap();
        assert!(parsed.endemic.is_none());
        assert!(parsed.residual_endemic.is_none());
        assert_eq!(parsed.r0.to_bits(), report.r0.to_bits());
    }

    #[test]
    fn reports_round_trip_bit_exactly() {
        let report = EquilibriumReport::compute(&endemic_params()).unwrap();
        let rendered = render_equilibrium_report(&report);
        let parsed = parse_equilibrium_report(&rendered).unwrap();

        assert_eq!(parsed.r0.to_bits(), report.r0.to_bits());
        let endemic = report.endemic.unwrap().to_array();
        let parsed_endemic = parsed.endemic.unwrap();
        for component in 0..4 {
            assert_eq!(parsed.dfe[component].to_bits(), report.dfe.to_array()[component].to_bits());
            assert_eq!(parsed_endemic[component].to_bits(), endemic[component].to_bits());
        }
        assert_eq!(parsed.residual_dfe.to_bits(), report.residual_dfe.to_bits());
        assert_eq!(
            parsed.residual_endemic.unwrap().to_bits(),
            report.residual_endemic.unwrap().to_bits()
        );
    }

    #[test]
    fn serialization_is_deterministic() {
        let report = EquilibriumReport::compute(&endemic_params()).unwrap();
        assert_eq!(render_equilibrium_report(&report), render_equilibrium_report(&report));
    }
}

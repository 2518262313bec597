//! JSON and CSV encodings of run and sweep reports.
//!
//! JSON keys and CSV headers are the field names of [`RunReport`] and
//! [`SweepRow`] in declaration order. CSV is UTF-8, comma separated, with a
//! mandatory header row; absent values are empty fields.

use crate::error::{Error, Result};
use crate::protocol::RunReport;
use crate::sweep::SweepRow;
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::InvalidArgument(format!("unknown format `{s}`"))),
        }
    }
}

/// Header row of the CSV run report.
pub const RUN_REPORT_COLUMNS: &[&str] = &[
    "mode",
    "seed",
    "trials",
    "announced",
    "effective_trials",
    "announce_rate",
    "attack_phi",
    "attack_target",
    "key_bits_ab",
    "key_bits_bc",
    "key_bits_ac",
    "qkd_key_bits",
    "pqss_key_bits",
    "total_key_bits",
    "expected_success_rate",
    "success_rate",
    "qkd_set_trials",
    "qkd_conditional_success",
    "qkd_key_disagreements",
    "pqss_reconstruction_failures",
    "partial_inference_events",
    "partial_inference_rate",
    "security_trials",
    "security_events",
    "security_event_frequency",
    "security_p_value",
    "epsilon",
    "qubits_consumed",
    "qubits_per_key_bit",
    "n_q_paper",
    "n_q_exact",
    "verdict",
];

/// Header row of the CSV sweep report.
pub const SWEEP_COLUMNS: &[&str] = &["phi", "p_bar", "empirical", "sigma", "verdict"];

fn format_err(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(format_err)?;
    }
    let bytes = w.into_inner().map_err(format_err)?;
    String::from_utf8(bytes).map_err(format_err)
}

fn from_csv<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(format_err)
}

pub fn write_run_report(report: &RunReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(report)
            .map(|s| s + "\n")
            .map_err(format_err),
        OutputFormat::Csv => to_csv(std::slice::from_ref(report)),
    }
}

pub fn parse_run_report(text: &str, format: OutputFormat) -> Result<RunReport> {
    match format {
        OutputFormat::Json => serde_json::from_str(text).map_err(format_err),
        OutputFormat::Csv => from_csv(text)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Format("empty CSV report".into())),
    }
}

pub fn write_sweep(rows: &[SweepRow], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(rows)
            .map(|s| s + "\n")
            .map_err(format_err),
        OutputFormat::Csv => {
            if rows.is_empty() {
                return Ok(SWEEP_COLUMNS.join(",") + "\n");
            }
            to_csv(rows)
        }
    }
}

pub fn parse_sweep(text: &str, format: OutputFormat) -> Result<Vec<SweepRow>> {
    match format {
        OutputFormat::Json => serde_json::from_str(text).map_err(format_err),
        OutputFormat::Csv => from_csv(text),
    }
}

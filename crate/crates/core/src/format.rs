//! Workload file formats.
//!
//! CSV has the exact header `pid,arrival_ms,burst_ms`; JSON is an object
//! with `label` and a `processes` array of `{pid, arrival_ms, burst_ms}`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Workload, WorkloadError};

pub const CSV_HEADER: &str = "pid,arrival_ms,burst_ms";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorkloadFormat {
    Csv,
    Json,
}

impl WorkloadFormat {
    /// `.json` means JSON; anything else is read as CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => WorkloadFormat::Json,
            _ => WorkloadFormat::Csv,
        }
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error(transparent)]
    Invalid(#[from] WorkloadError),
}

#[derive(Serialize, Deserialize)]
struct JsonProcess {
    pid: String,
    arrival_ms: i64,
    burst_ms: i64,
}

#[derive(Serialize, Deserialize)]
struct JsonWorkload {
    #[serde(default)]
    label: String,
    processes: Vec<JsonProcess>,
}

pub fn parse_workload(bytes: &[u8], format: WorkloadFormat) -> Result<Workload, FormatError> {
    match format {
        WorkloadFormat::Csv => parse_csv(bytes),
        WorkloadFormat::Json => parse_json(bytes),
    }
}

fn parse_csv(bytes: &[u8]) -> Result<Workload, FormatError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let csv_err = |e: csv::Error| FormatError::Parse {
        line: e.position().map_or(1, |p| p.line()),
        message: e.to_string(),
    };
    let headers = reader.headers().map_err(csv_err)?.clone();
    if headers.iter().collect::<Vec<_>>() != CSV_HEADER.split(',').collect::<Vec<_>>() {
        return Err(FormatError::Parse {
            line: 1,
            message: format!("expected header {CSV_HEADER:?}"),
        });
    }
    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = |i: usize, name: &str| -> Result<i64, FormatError> {
            let raw = rec.get(i).unwrap_or_default();
            raw.parse().map_err(|_| FormatError::Parse {
                line,
                message: format!("{name}: {raw:?} is not an integer"),
            })
        };
        let pid = rec.get(0).unwrap_or_default().to_string();
        records.push((pid, field(1, "arrival_ms")?, field(2, "burst_ms")?));
    }
    Ok(Workload::validate("", records)?)
}

fn parse_json(bytes: &[u8]) -> Result<Workload, FormatError> {
    let doc: JsonWorkload = serde_json::from_slice(bytes).map_err(|e| FormatError::Parse {
        line: e.line() as u64,
        message: e.to_string(),
    })?;
    Ok(Workload::validate(
        doc.label,
        doc.processes
            .into_iter()
            .map(|p| (p.pid, p.arrival_ms, p.burst_ms)),
    )?)
}

/// Canonical encoding: LF line endings, trailing newline. CSV does not
/// carry the label.
pub fn serialize_workload(workload: &Workload, format: WorkloadFormat) -> Vec<u8> {
    match format {
        WorkloadFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for p in workload.processes() {
                out.push_str(&format!("{},{},{}\n", p.pid, p.arrival, p.burst));
            }
            out.into_bytes()
        }
        WorkloadFormat::Json => {
            let doc = JsonWorkload {
                label: workload.label().to_string(),
                processes: workload
                    .processes()
                    .iter()
                    .map(|p| JsonProcess {
                        pid: p.pid.clone(),
                        arrival_ms: p.arrival as i64,
                        burst_ms: p.burst as i64,
                    })
                    .collect(),
            };
            let mut out = serde_json::to_vec_pretty(&doc).expect("workload serializes");
            out.push(b'\n');
            out
        }
    }
}

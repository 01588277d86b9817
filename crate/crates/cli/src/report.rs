use std::process::ExitCode;
use std::time::Instant;

use mmvc_core::Error;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

impl InputDigest {
    pub fn of(path: &str, data: &[u8]) -> Self {
        InputDigest { path: path.to_owned(), sha256: hex::encode(Sha256::digest(data)), bytes: data.len() }
    }
}

/// A closed-form bound next to the quantity it constrains.
#[derive(Debug, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub formula: String,
    pub evaluated: u64,
    pub observed: u64,
    pub holds: bool,
}

impl BoundCheck {
    pub fn at_most(name: &str, formula: String, evaluated: u64, observed: u64) -> Self {
        BoundCheck { name: name.into(), formula, evaluated, observed, holds: observed <= evaluated }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub run_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: u8,
    /// Induced copy of the forbidden pattern, for class violations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub located: Option<Vec<usize>>,
}

/// The JSON document every command prints. Vertex ids are 0-based; the
/// graph file format is 1-based.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub id_base: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputDigest>,
    pub outcome: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    pub bound_checks: Vec<BoundCheck>,
    pub timings: Timings,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip)]
    pub summary: String,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            id_base: 0,
            input: None,
            outcome: Value::Null,
            witness: None,
            bound_checks: Vec::new(),
            timings: Timings::default(),
            error: None,
            summary: String::new(),
        }
    }
}

pub fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NotInClass { .. } | Error::StructureViolation(_) | Error::EhViolation { .. } => 3,
        Error::TooLarge { .. } => 4,
        Error::TheoremContradiction(_) => 5,
        _ => 2,
    }
}

fn kind_of(e: &Error) -> &'static str {
    match e {
        Error::UnsupportedPattern { .. } => "unsupported_pattern",
        Error::TooLarge { .. } => "too_large",
        Error::NotInClass { .. } => "not_in_class",
        Error::StructureViolation(_) => "structure_violation",
        Error::NotConnected => "not_connected",
        Error::Precondition(_) => "precondition",
        Error::EhViolation { .. } => "eh_violation",
        Error::TheoremContradiction(_) => "theorem_contradiction",
        Error::GenerationFailed(_) => "generation_failed",
        Error::Parse { .. } => "parse",
        Error::Config(_) => "config",
        Error::Io(_) => "io",
    }
}

pub fn error_info(e: &Error) -> ErrorInfo {
    let located = match e {
        Error::NotInClass { witness, .. } => Some(witness.as_slice().to_vec()),
        _ => None,
    };
    ErrorInfo { kind: kind_of(e), message: e.to_string(), exit_code: exit_code_for(e), located }
}

/// Prints the report (JSON on stdout, summary on stderr) and picks the exit
/// status.
pub fn emit(report: &Report, code: u8) -> ExitCode {
    match serde_json::to_string_pretty(report) {
        Ok(json) => println!("{json}"),
        Err(e) => eprintln!("failed to serialize report: {e}"),
    }
    if !report.summary.is_empty() {
        eprintln!("{}", report.summary.trim_end());
    }
    if let Some(err) = &report.error {
        eprintln!("error: {}", err.message);
    }
    ExitCode::from(code)
}

use std::io::Write;

use hydrobound::{
    BoundResult, BoundTarget, CheckOutcome, MicrostructureDescriptor, NormalizedSpec, Phase, RegimeRow, RegimeTable,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" | "jsonl" => Ok(Format::Json),
            other => Err(CliError::input(format!("unknown output format {other:?}, expected csv or json"))),
        }
    }
}

/// Floats that may be infinite: written as numbers when finite and as the
/// strings `"inf"`, `"-inf"`, `"nan"` otherwise, since JSON has no infinities.
mod extended_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_str(&super::format_special(*x))
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                _ => t.parse().map_err(serde::de::Error::custom),
            },
        }
    }
}

fn format_special(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// 17 significant digits, enough to round-trip any double.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format_special(x)
    }
}

/// Phase-selection labels in the caller's numbering.
fn caller_target(target: BoundTarget, labels: &NormalizedSpec) -> String {
    match target.phase() {
        Some(p) => format!("phase{}", labels.to_caller(p)),
        None => "max".into(),
    }
}

fn caller_phase(p: Option<Phase>, labels: &NormalizedSpec) -> Option<u8> {
    p.map(|p| labels.to_caller(p).number())
}

/// `core 1 / coating 2*` with phases renumbered for the caller.
fn caller_microstructure(m: &MicrostructureDescriptor, labels: &NormalizedSpec) -> String {
    match m.core_phase {
        Some(core) => {
            let star = |p: Phase| if m.max_attaining_phase == Some(p) { "*" } else { "" };
            let coat = core.other();
            format!(
                "core {}{} / coating {}{}",
                labels.to_caller(core),
                star(core),
                labels.to_caller(coat),
                star(coat)
            )
        }
        None => "undetermined".into(),
    }
}

fn caller_ratio_name(row_kind: Option<hydrobound::RatioKind>, phase: Phase, labels: &NormalizedSpec) -> Option<String> {
    row_kind.map(|k| format!("{k:?}{}", labels.to_caller(phase)))
}

fn internal_labels(labels: &NormalizedSpec) -> String {
    if labels.swapped {
        "swapped (internal phase 1 is caller phase 2)".into()
    } else {
        "unchanged".into()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub sigma0: f64,
    pub delta_t: f64,
    pub target: String,
    pub p: String,
    pub value: f64,
    pub argmin: f64,
    pub endpoint: String,
    pub phase: u8,
    pub regime: String,
    pub ratio: Option<String>,
    pub core_phase: Option<u8>,
    pub coating_phase: Option<u8>,
    pub max_phase: Option<u8>,
    pub microstructure: String,
    pub ordering: String,
    pub labels: String,
}

impl BoundRow {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        sigma0: f64,
        delta_t: f64,
        target: BoundTarget,
        p: &str,
        result: &BoundResult,
        ordering: &str,
        labels: &NormalizedSpec,
    ) -> Self {
        let m = &result.microstructure;
        Self {
            sigma0,
            delta_t,
            target: caller_target(target, labels),
            p: p.to_string(),
            value: result.value,
            argmin: result.argmin,
            endpoint: result.at_endpoint.to_string(),
            phase: labels.to_caller(result.phase).number(),
            regime: result.branch.to_string(),
            ratio: caller_ratio_name(result.ratio_kind(), result.phase, labels),
            core_phase: caller_phase(m.core_phase, labels),
            coating_phase: caller_phase(m.coating_phase(), labels),
            max_phase: caller_phase(m.max_attaining_phase, labels),
            microstructure: caller_microstructure(m, labels),
            ordering: ordering.to_string(),
            labels: internal_labels(labels),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub target: String,
    pub row: usize,
    #[serde(with = "extended_f64")]
    pub sigma0_from: f64,
    #[serde(with = "extended_f64")]
    pub sigma0_to: f64,
    pub regime: String,
    pub phase: u8,
    pub ratio: Option<String>,
    pub ratio_value: Option<f64>,
    pub formula: String,
    pub core_phase: Option<u8>,
    pub coating_phase: Option<u8>,
    pub max_phase: Option<u8>,
    pub microstructure: String,
    pub delta_t: f64,
    pub d: f64,
    pub f: f64,
    pub labels: String,
}

impl TableRow {
    pub fn from_table(table: &RegimeTable, delta_t: f64, labels: &NormalizedSpec) -> Vec<Self> {
        table
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| Self::new(table, r, i, delta_t, labels))
            .collect()
    }

    fn new(table: &RegimeTable, r: &RegimeRow, row: usize, delta_t: f64, labels: &NormalizedSpec) -> Self {
        let m = &r.microstructure;
        let c = &table.constants;
        Self {
            target: caller_target(table.target, labels),
            row,
            sigma0_from: r.sigma0_from,
            sigma0_to: r.sigma0_to,
            regime: r.branch.to_string(),
            phase: labels.to_caller(r.phase).number(),
            ratio: caller_ratio_name(r.branch.kind(), r.phase, labels),
            ratio_value: r.ratio,
            formula: r.formula(c.d),
            core_phase: caller_phase(m.core_phase, labels),
            coating_phase: caller_phase(m.coating_phase(), labels),
            max_phase: caller_phase(m.max_attaining_phase, labels),
            microstructure: caller_microstructure(m, labels),
            delta_t,
            d: c.d,
            f: c.f,
            labels: internal_labels(labels),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub check: String,
    pub core_phase: Option<u8>,
    #[serde(with = "extended_f64")]
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub grid_n: usize,
    pub note: Option<String>,
    pub labels: String,
}

impl VerifyRow {
    pub fn new(check: &CheckOutcome, grid_n: usize, labels: &NormalizedSpec) -> Self {
        Self {
            check: check.name.clone(),
            core_phase: caller_phase(check.core_phase, labels),
            residual: check.residual,
            tolerance: check.tolerance,
            passed: check.passed,
            grid_n,
            note: check.note.clone(),
            labels: internal_labels(labels),
        }
    }
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => format_f64(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn object_of<T: Serialize>(row: &T) -> Result<serde_json::Map<String, Value>, CliError> {
    match serde_json::to_value(row).map_err(|e| CliError::internal(format!("serializing row: {e}")))? {
        Value::Object(m) => Ok(m),
        _ => Err(CliError::internal("report rows serialize to objects")),
    }
}

/// Writes rows as RFC-4180 CSV with a header, or as JSON lines.
pub fn write_rows<T: Serialize, W: Write>(out: W, rows: &[T], format: Format) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::input(format!("cannot write output: {e}"));
    match format {
        Format::Json => {
            let mut out = std::io::BufWriter::new(out);
            for row in rows {
                serde_json::to_writer(&mut out, row).map_err(|e| CliError::internal(format!("serializing row: {e}")))?;
                out.write_all(b"\n").map_err(io)?;
            }
            out.flush().map_err(io)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let csv_err = |e: csv::Error| CliError::input(format!("cannot write output: {e}"));
            for (i, row) in rows.iter().enumerate() {
                let obj = object_of(row)?;
                if i == 0 {
                    w.write_record(obj.keys()).map_err(csv_err)?;
                }
                w.write_record(obj.values().map(csv_field)).map_err(csv_err)?;
            }
            w.flush().map_err(io)
        }
    }
}

//! Human-readable renderings of analysis results.

use crate::analysis::AnalysisResult;
use crate::capmatrix::{CapacitanceMatrix, CircuitCaps};
use crate::error::Result;
use crate::rules::DesignRuleReport;
use serde_json::Value;
use std::fmt::Write;

/// Formats with 4 significant digits; exponent notation outside
/// [1e-3, 1e6).
pub fn sig4(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-3..6).contains(&mag) {
        let decimals = (3 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.3e}")
    }
}

/// Flattens every numeric leaf of a JSON value into `(path, value)` rows.
pub fn numeric_leaves(value: &Value) -> Vec<(String, f64)> {
    let mut out = Vec::new();
    walk(value, String::new(), &mut out);
    out
}

fn walk(value: &Value, path: String, out: &mut Vec<(String, f64)>) {
    match value {
        Value::Number(n) => out.push((path, n.as_f64().unwrap_or(f64::NAN))),
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                walk(v, format!("{path}[{i}]"), out);
            }
        }
        Value::Object(map) => {
            for (k, v) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(v, p, out);
            }
        }
        _ => {}
    }
}

/// Like [`numeric_leaves`], but integers print exactly and floats with
/// [`sig4`].
fn walk_formatted(value: &Value, path: String, out: &mut Vec<(String, String)>) {
    match value {
        Value::Number(n) if n.is_f64() => out.push((path, sig4(n.as_f64().unwrap_or(f64::NAN)))),
        Value::Number(n) => out.push((path, n.to_string())),
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                walk_formatted(v, format!("{path}[{i}]"), out);
            }
        }
        Value::Object(map) => {
            for (k, v) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk_formatted(v, p, out);
            }
        }
        _ => {}
    }
}

fn section(out: &mut String, title: &str, value: &Value, name_key: Option<&str>) {
    let _ = writeln!(out, "\n[{title}]");
    let items: Vec<&Value> = match value {
        Value::Array(items) => items.iter().collect(),
        other => vec![other],
    };
    for (i, item) in items.iter().enumerate() {
        let label = name_key
            .and_then(|k| item.get(k))
            .and_then(Value::as_str)
            .map(str::to_string)
            .unwrap_or_else(|| format!("{title}[{i}]"));
        let mut head = label.clone();
        for key in ["role", "from", "to", "qubit", "quantity"] {
            if let Some(s) = item.get(key).and_then(Value::as_str) {
                let _ = write!(head, "  {key}={s}");
            }
        }
        let _ = writeln!(out, "{head}");
        let mut rows = Vec::new();
        walk_formatted(item, String::new(), &mut rows);
        let width = rows.iter().map(|(p, _)| p.len()).max().unwrap_or(0);
        for (path, v) in rows {
            let _ = writeln!(out, "  {path:<width$}  {v:>12}");
        }
    }
}

/// Aligned-column rendering of a design-rule report.
pub fn rules_text(report: &DesignRuleReport) -> String {
    let mut out = String::new();
    let rw = report.entries.iter().map(|e| e.rule.len()).max().unwrap_or(4).max(4);
    let sw = report.entries.iter().map(|e| e.subject.len()).max().unwrap_or(7).max(7);
    let _ = writeln!(
        out,
        "{:<rw$}  {:<sw$}  {:>12}  {:>12}  {:>12}  RESULT",
        "RULE", "SUBJECT", "measured", "threshold", "margin"
    );
    for e in &report.entries {
        let _ = writeln!(
            out,
            "{:<rw$}  {:<sw$}  {:>12}  {:>12}  {:>12}  {}",
            e.rule,
            e.subject,
            sig4(e.measured),
            sig4(e.threshold),
            sig4(e.margin),
            if e.pass { "pass" } else { "FAIL" }
        );
    }
    let _ = writeln!(out, "overall: {}", if report.overall_pass { "PASS" } else { "FAIL" });
    out
}

/// Text report. Every numeric field of the JSON report appears under its
/// JSON path.
pub fn analysis_text(result: &AnalysisResult) -> Result<String> {
    let json = serde_json::to_value(result)?;
    let p = &result.provenance;
    let mut out = format!(
        "{} {}  constants: {}  input sha256: {}\n",
        p.tool,
        p.tool_version,
        p.constants,
        p.input_sha256.as_deref().unwrap_or("-")
    );
    section(&mut out, "qubits", &json["qubits"], Some("name"));
    section(&mut out, "resonators", &json["resonators"], Some("name"));
    section(&mut out, "couplings", &json["couplings"], Some("name"));
    section(&mut out, "drive_lines", &json["drive_lines"], Some("name"));
    section(&mut out, "deviations", &json["deviations"], Some("subject"));
    let _ = writeln!(out, "\n[design_rules]");
    out.push_str(&rules_text(&result.design_rules));
    Ok(out)
}

pub fn matrix_text(m: &CapacitanceMatrix) -> String {
    let names = m.net_names();
    let w = names.iter().map(String::len).max().unwrap_or(1).max(10);
    let mut out = format!("{:<w$}", "fF");
    for n in names {
        let _ = write!(out, "  {n:>w$}");
    }
    out.push('\n');
    for (i, n) in names.iter().enumerate() {
        let _ = write!(out, "{n:<w$}");
        for j in 0..names.len() {
            let _ = write!(out, "  {:>w$}", sig4(m.values()[(i, j)]));
        }
        out.push('\n');
    }
    out
}

pub fn circuit_caps_text(caps: &CircuitCaps) -> String {
    let mut out = String::from("shunt (fF)\n");
    for (n, c) in &caps.shunt {
        let _ = writeln!(out, "  {n:<16}  {:>12}", sig4(*c));
    }
    out.push_str("coupling (fF)\n");
    for ((a, b), c) in &caps.couplings {
        let _ = writeln!(out, "  {:<16}  {:>12}", format!("{a}-{b}"), sig4(*c));
    }
    out
}

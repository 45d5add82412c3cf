//! Rendering of entry reports as JSON or as a plain text table.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::catalog::{EntryReport, ReportVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected text or json)")),
        }
    }
}

/// Verdict counts over all checks, every verdict present (possibly zero).
pub fn summary(reports: &[EntryReport]) -> BTreeMap<&'static str, usize> {
    let mut out: BTreeMap<&'static str, usize> = ReportVerdict::ALL.iter().map(|v| (v.as_str(), 0)).collect();
    for c in reports.iter().flat_map(|r| &r.checks) {
        *out.get_mut(c.verdict.as_str()).unwrap() += 1;
    }
    out
}

/// The report document: entries sorted by name plus the aggregate counts.
pub fn report_value(reports: &[EntryReport]) -> Value {
    let mut sorted: Vec<&EntryReport> = reports.iter().collect();
    sorted.sort_by(|a, b| a.entry.cmp(&b.entry));
    json!({
        "entries": sorted.len(),
        "reports": sorted,
        "summary": summary(reports),
    })
}

fn render_json(reports: &[EntryReport]) -> String {
    let mut s = serde_json::to_string_pretty(&report_value(reports)).expect("values always serialize");
    s.push('\n');
    s
}

fn compact(v: &Value) -> String {
    match v {
        Value::Object(m) if m.is_empty() => String::new(),
        _ => v.to_string(),
    }
}

fn render_text(reports: &[EntryReport]) -> String {
    let mut sorted: Vec<&EntryReport> = reports.iter().collect();
    sorted.sort_by(|a, b| a.entry.cmp(&b.entry));
    let mut out = String::new();
    for r in sorted {
        out.push_str(&format!("== {}\n", r.entry));
        let width = r.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        for c in &r.checks {
            out.push_str(&format!("  {:<width$}  {:<16}  {}\n", c.name, c.verdict.as_str(), compact(&c.details)));
        }
    }
    out.push_str(&format!("entries: {}\n", reports.len()));
    for (v, n) in summary(reports) {
        out.push_str(&format!("{v}: {n}\n"));
    }
    out
}

pub fn emit_report(reports: &[EntryReport], format: Format) -> String {
    match format {
        Format::Json => render_json(reports),
        Format::Text => render_text(reports),
    }
}

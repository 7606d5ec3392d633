//! Plain-text rendering of a report: scalars as `key: value`, arrays of
//! records as aligned columns.

use std::fmt::Write;

use serde_json::Value;

use crate::Report;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

/// Nested objects become dotted column names.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn records(rows: &[Value], out: &mut String) {
    let flat: Vec<Vec<(String, String)>> = rows
        .iter()
        .map(|r| {
            let mut cells = Vec::new();
            flatten("", r, &mut cells);
            cells
        })
        .collect();
    let mut columns: Vec<String> = Vec::new();
    for row in &flat {
        for (k, _) in row {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let cell = |row: &[(String, String)], col: &str| {
        row.iter()
            .find(|(k, _)| k == col)
            .map(|(_, v)| v.clone())
            .unwrap_or_default()
    };
    let widths: Vec<usize> = columns
        .iter()
        .map(|c| flat.iter().map(|r| cell(r, c).chars().count()).fold(c.chars().count(), usize::max))
        .collect();
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "  {}", line(columns.clone()));
    for row in &flat {
        let _ = writeln!(out, "  {}", line(columns.iter().map(|c| cell(row, c)).collect()));
    }
}

pub fn render(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", report.command);
    let mut opts = Vec::new();
    flatten("", &report.options, &mut opts);
    for (k, v) in opts {
        let _ = writeln!(out, "{k}: {v}");
    }
    match &report.result {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Array(rows) if rows.iter().any(Value::is_object) => {
                        let _ = writeln!(out, "{k}:");
                        records(rows, &mut out);
                    }
                    Value::Object(_) => {
                        let mut cells = Vec::new();
                        flatten(k, v, &mut cells);
                        for (ck, cv) in cells {
                            let _ = writeln!(out, "{ck}: {cv}");
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{k}: {}", scalar(v));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "result: {}", scalar(other));
        }
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

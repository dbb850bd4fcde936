//! Plain-text rendering of a report for terminals.
//!
//! Objects flatten to dotted keys; arrays of equal-length rows of scalars
//! print as aligned tables.

use serde_json::Value;

use crate::Report;

pub fn render(report: &Report) -> String {
    let mut out = format!("negdep {} ({})\n", report.version, report.scenario.kind());
    if let Some(e) = &report.error {
        out.push_str(&format!("error: {}: {}\n", e.kind, e.message));
    }
    if let Some(r) = &report.result {
        walk("", r, &mut out);
    }
    if let Some(t) = report.timing_ms {
        out.push_str(&format!("timing_ms: {t}\n"));
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn rows(v: &[Value]) -> Option<Vec<Vec<String>>> {
    let rows: Option<Vec<Vec<String>>> = v
        .iter()
        .map(|r| r.as_array()?.iter().map(scalar).collect())
        .collect();
    rows.filter(|rs| !rs.is_empty() && rs.iter().all(|r| r.len() == rs[0].len()))
}

fn walk(key: &str, v: &Value, out: &mut String) {
    let join = |k: &str| {
        if key.is_empty() {
            k.to_string()
        } else {
            format!("{key}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                walk(&join(k), x, out);
            }
        }
        Value::Array(items) => {
            if let Some(line) = items.iter().map(scalar).collect::<Option<Vec<_>>>() {
                out.push_str(&format!("{key}: [{}]\n", line.join(", ")));
            } else if let Some(table) = rows(items) {
                out.push_str(&format!("{key}:\n"));
                let cols = table[0].len();
                let width: Vec<usize> = (0..cols)
                    .map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0))
                    .collect();
                for (i, r) in table.iter().enumerate() {
                    let cells: Vec<String> = r
                        .iter()
                        .zip(&width)
                        .map(|(s, w)| format!("{s:>w$}"))
                        .collect();
                    out.push_str(&format!("  [{i}] {}\n", cells.join("  ")));
                }
            } else {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{key}[{i}]"), x, out);
                }
            }
        }
        _ => out.push_str(&format!("{key}: {}\n", scalar(v).unwrap_or_default())),
    }
}

//! JSON and aligned TSV rendering.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

/// A single JSON document, or one document per line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Single(Value),
    Lines(Vec<Value>),
}

/// Compact JSON with sorted keys, newline terminated.
pub fn canonical(out: &Outcome) -> String {
    let mut s = String::new();
    let mut push = |v: &Value| {
        s.push_str(&serde_json::to_string(v).expect("json values serialize"));
        s.push('\n');
    };
    match out {
        Outcome::Single(v) => push(v),
        Outcome::Lines(vs) => vs.iter().for_each(push),
    }
    s
}

pub fn render(out: &Outcome, format: Format) -> String {
    match format {
        Format::Json => canonical(out),
        Format::Tsv => match out {
            Outcome::Single(v) => tsv(v),
            Outcome::Lines(vs) => table(vs),
        },
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let last = r.len().saturating_sub(1);
        for (c, s) in r.iter().enumerate() {
            out.push_str(s);
            if c < last {
                out.push_str(&" ".repeat(widths[c] - s.chars().count()));
                out.push('\t');
            }
        }
        out.push('\n');
    }
    out
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(a) if !a.is_empty() && a.iter().all(Value::is_object))
}

fn table(items: &[Value]) -> String {
    let Some(Value::Object(first)) = items.first() else {
        return String::new();
    };
    let header: Vec<String> = first.keys().cloned().collect();
    let mut rows = vec![header.clone()];
    for item in items {
        rows.push(header.iter().map(|k| item.get(k).map(cell).unwrap_or_default()).collect());
    }
    aligned(&rows)
}

fn tsv(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let scalars: Vec<Vec<String>> = map
                .iter()
                .filter(|(_, v)| !is_table(v))
                .map(|(k, v)| vec![k.clone(), cell(v)])
                .collect();
            let mut out = aligned(&scalars);
            for (k, v) in map.iter().filter(|(_, v)| is_table(v)) {
                out.push_str(&format!("\n# {k}\n"));
                if let Value::Array(items) = v {
                    out.push_str(&table(items));
                }
            }
            out
        }
        Value::Array(items) if is_table(v) => table(items),
        other => format!("{}\n", cell(other)),
    }
}

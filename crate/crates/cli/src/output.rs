use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// What a subcommand produced: a JSON document, the flat rows of its CSV
/// projection, and whether any checked claim failed.
#[derive(Debug)]
pub struct Output {
    pub doc: Value,
    pub rows: Vec<Value>,
    pub failed: bool,
}

impl Output {
    pub fn new(doc: impl Serialize, rows: Vec<Value>) -> Self {
        Self {
            doc: serde_json::to_value(doc).expect("output serializes"),
            rows,
            failed: false,
        }
    }

    pub fn failed(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.doc).expect("valid JSON") + "\n",
            Format::Csv => to_csv(&self.rows),
        }
    }
}

pub fn rows_of<T: Serialize>(items: &[T]) -> Vec<Value> {
    items
        .iter()
        .map(|i| serde_json::to_value(i).expect("row serializes"))
        .collect()
}

fn to_csv(rows: &[Value]) -> String {
    let mut header: Vec<String> = Vec::new();
    for row in rows {
        if let Value::Object(map) = row {
            for key in map.keys() {
                if !header.contains(key) {
                    header.push(key.clone());
                }
            }
        }
    }
    let mut out = header
        .iter()
        .map(|h| field(h))
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    let empty = Map::new();
    for row in rows {
        let map = row.as_object().unwrap_or(&empty);
        let line: Vec<String> = header
            .iter()
            .map(|h| map.get(h).map(cell).unwrap_or_default())
            .collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => format!("{:.16e}", n.as_f64().expect("f64")),
        Value::Number(n) => n.to_string(),
        Value::String(s) => field(s),
        other => field(&other.to_string()),
    }
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

/// Top-level JSON document emitted by every command.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: Value,
    pub tool_version: String,
    pub elapsed_ms: u64,
}

/// A command's result in both output shapes.
pub struct Rendered {
    pub json: Value,
    /// Header first.
    pub csv: Vec<Vec<String>>,
}

impl Rendered {
    /// A single record; nested values become JSON text in their CSV cell.
    pub fn record(json: Value) -> Self {
        let map = json.as_object().cloned().unwrap_or_default();
        let header: Vec<String> = map.keys().cloned().collect();
        let row: Vec<String> = map.values().map(cell).collect();
        Self {
            json,
            csv: vec![header, row],
        }
    }
}

pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        other => other.to_string(),
    }
}

pub fn write_csv<W: Write>(rows: &[Vec<String>], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()
}

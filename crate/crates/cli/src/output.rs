//! Tabular results rendered as CSV with `#` metadata lines, or as one JSON object.

use std::io::Write;

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug)]
pub struct Table {
    pub command: &'static str,
    pub parameters: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub summary: Map<String, Value>,
}

impl Table {
    pub fn new(command: &'static str, parameters: Value, columns: &[&'static str]) -> Self {
        Self {
            command,
            parameters,
            columns: columns.to_vec(),
            rows: Vec::new(),
            summary: Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "parameters": self.parameters,
            "summary": self.summary,
            "columns": self.columns,
            "rows": self.rows,
        })
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "# command: {}", self.command)?;
        writeln!(out, "# version: {}", env!("CARGO_PKG_VERSION"))?;
        if let Value::Object(params) = &self.parameters {
            for (k, v) in params {
                writeln!(out, "# param {k} = {}", plain(v))?;
            }
        }
        for (k, v) in &self.summary {
            writeln!(out, "# {k} = {}", plain(v))?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(plain))?;
        }
        w.flush()
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// A float cell; non-finite values become strings since JSON has no literal for them.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::String(x.to_string())
    }
}

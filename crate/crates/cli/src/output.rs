//! Tabular output shared by every subcommand.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{Map, Value};
use vilenkin::io::Header;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Named columns with rows of JSON scalars.
pub struct Table {
    pub header: Header,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(header: Header, columns: &[&'static str]) -> Self {
        Self { header, columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, out: Option<&Path>, format: Format) -> Result<()> {
        let mut sink: Box<dyn Write> = match out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            )),
            None => Box::new(io::stdout().lock()),
        };
        match format {
            Format::Csv => self.write_csv(&mut sink)?,
            Format::Json => self.write_json(&mut sink)?,
        }
        sink.flush()?;
        Ok(())
    }

    fn write_csv(&self, sink: &mut dyn Write) -> Result<()> {
        writeln!(sink, "{}", self.header)?;
        let mut w = csv::Writer::from_writer(sink);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(cell))?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_json(&self, sink: &mut dyn Write) -> Result<()> {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> =
                    self.columns.iter().map(|c| c.to_string()).zip(row.iter().cloned()).collect();
                Value::Object(map)
            })
            .collect();
        let doc = serde_json::json!({ "config": config_object(&self.header), "records": records });
        serde_json::to_writer_pretty(&mut *sink, &doc)?;
        writeln!(sink)?;
        Ok(())
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn config_object(header: &Header) -> Value {
    let mut map = Map::new();
    map.insert("header".into(), Value::String(header.to_string()));
    map.insert(
        "radix".into(),
        Value::Array(header.config.radices().iter().map(|&m| Value::from(m)).collect()),
    );
    map.insert("N".into(), Value::from(header.config.resolution()));
    for (k, v) in &header.fields {
        map.insert(k.clone(), Value::String(v.clone()));
    }
    Value::Object(map)
}

/// Float cell: shortest round-trip decimal. JSON has no non-finite numbers,
/// so `inf` and `nan` become strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
    } else if x.is_nan() {
        Value::String("nan".into())
    } else if x > 0.0 {
        Value::String("inf".into())
    } else {
        Value::String("-inf".into())
    }
}

pub fn int(n: usize) -> Value {
    Value::from(n)
}

pub fn text(s: impl Into<String>) -> Value {
    Value::String(s.into())
}

pub fn flag(b: bool) -> Value {
    Value::Bool(b)
}

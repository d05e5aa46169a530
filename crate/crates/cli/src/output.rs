use std::io::Write;

use anyhow::Result;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::{Format, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&'static str]) -> Self {
        Self { name: name.into(), columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write_csv(out: &mut impl Write, table: &Table) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(cell))?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_json(tables: &[Table]) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "tables": tables })
}

/// Writes all tables to one stream. CSV tables are separated by a
/// `# name` line.
pub fn write_stream(out: &mut impl Write, tables: &[Table], format: Format) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &to_json(tables))?;
            writeln!(out)?;
        }
        Format::Csv => {
            for (i, t) in tables.iter().enumerate() {
                if tables.len() > 1 {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    writeln!(out, "# {}", t.name)?;
                }
                write_csv(out, t)?;
            }
        }
    }
    Ok(())
}

/// SHA-256 of the canonical JSON form of the config.
pub fn config_digest(cfg: &RunConfig) -> String {
    let canonical = serde_json::to_vec(cfg).expect("config serializes");
    Sha256::digest(&canonical).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub name: String,
    pub wall_clock_ms: f64,
}

pub fn manifest(cfg: &RunConfig, stages: &[Stage], files: &[String]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool": "subdist",
        "versions": {
            "subdist-cli": env!("CARGO_PKG_VERSION"),
            "subdist-core": subdist::VERSION,
        },
        "config_digest": config_digest(cfg),
        "config": cfg,
        "stages": stages,
        "outputs": files,
    })
}

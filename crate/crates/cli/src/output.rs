//! Table emitters. CSV files carry a header row; JSON documents carry
//! `schema_version`, the command name, metadata, the column list and rows
//! as arrays in column order.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::CliResult;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(x) => x.to_string(),
            Cell::Float(x) => format!("{x:?}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(x) => json!(x),
            Cell::Float(x) if x.is_finite() => json!(x),
            Cell::Float(_) => Value::Null,
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Scalar results that do not fit the row schema (JSON only).
    pub meta: Map<String, Value>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Self { command, columns: columns.to_vec(), rows: Vec::new(), meta: Map::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) {
        self.meta.insert(key.to_string(), value.into());
    }

    pub fn to_csv(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.into_inner().map_err(|e| crate::error::CliError::Config(format!("csv: {e}")))
    }

    pub fn to_json(&self) -> CliResult<Vec<u8>> {
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
        let doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "meta": Value::Object(self.meta.clone()),
            "columns": self.columns,
            "rows": rows,
        });
        let mut out = serde_json::to_vec_pretty(&doc)?;
        out.push(b'\n');
        Ok(out)
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> CliResult<()> {
        let bytes = match format {
            Format::Csv => self.to_csv()?,
            Format::Json => self.to_json()?,
        };
        match out {
            Some(p) => std::fs::write(p, bytes)?,
            None => std::io::stdout().lock().write_all(&bytes)?,
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        let mut t = Table::new("demo", &["l", "x", "ok"]);
        t.push(vec![1i64.into(), 0.25.into(), true.into()]);
        t.push(vec![2i64.into(), f64::NAN.into(), false.into()]);
        t.meta("flux", 0.3);
        t
    }

    #[test]
    fn csv_has_header_and_rows() {
        let s = String::from_utf8(table().to_csv().unwrap()).unwrap();
        assert_eq!(s, "l,x,ok\n1,0.25,true\n2,NaN,false\n");
    }

    #[test]
    fn json_carries_schema_version() {
        let v: Value = serde_json::from_slice(&table().to_json().unwrap()).unwrap();
        assert_eq!(v["schema_version"], json!(SCHEMA_VERSION));
        assert_eq!(v["rows"][1][1], Value::Null);
        assert_eq!(v["columns"][2], json!("ok"));
    }
}

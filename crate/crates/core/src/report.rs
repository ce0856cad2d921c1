//! CSV and JSON report rows with fixed numeric formatting.
//!
//! Floats are written with 17 significant digits in scientific notation
//! (`{:.16e}`), which round-trips every `f64` and never depends on locale or
//! shortest-representation heuristics, so equal inputs give equal bytes.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no rows to write")]
    Empty,
    #[error("row {row} has columns {found:?}, expected {expected:?}")]
    ColumnMismatch {
        row: usize,
        expected: Vec<String>,
        found: Vec<String>,
    },
    #[error("column {column} in row {row} is not finite")]
    NonFinite { row: usize, column: String },
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

/// A single cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v as i64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_owned())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

/// 17 significant digits, scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Ordered named cells.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReportRow {
    cells: Vec<(String, Value)>,
}

impl ReportRow {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.cells.push((name.to_owned(), value.into()));
        self
    }

    pub fn columns(&self) -> Vec<String> {
        self.cells.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.cells.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn cells(&self) -> &[(String, Value)] {
        &self.cells
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

fn validate(rows: &[ReportRow]) -> Result<(), ReportError> {
    let first = rows.first().ok_or(ReportError::Empty)?;
    let expected = first.columns();
    for (i, row) in rows.iter().enumerate() {
        let found = row.columns();
        if found != expected {
            return Err(ReportError::ColumnMismatch {
                row: i,
                expected,
                found,
            });
        }
        for (name, value) in &row.cells {
            if let Value::Float(x) = value {
                if !x.is_finite() {
                    return Err(ReportError::NonFinite {
                        row: i,
                        column: name.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Float(x) => format_float(*x),
        Value::Bool(b) => b.to_string(),
        Value::Text(s) => s.clone(),
    }
}

fn render_csv(rows: &[ReportRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_text = "writing to memory cannot fail";
    w.write_record(rows[0].columns()).expect(to_text);
    for row in rows {
        w.write_record(row.cells.iter().map(|(_, v)| csv_cell(v))).expect(to_text);
    }
    let bytes = w.into_inner().expect(to_text);
    String::from_utf8(bytes).expect("cells are UTF-8")
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn json_cell(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Float(x) => format_float(*x),
        Value::Bool(b) => b.to_string(),
        Value::Text(s) => json_string(s),
    }
}

/// Renders rows to text after validating them.
pub fn render(rows: &[ReportRow], format: Format) -> Result<String, ReportError> {
    validate(rows)?;
    let mut out = String::new();
    match format {
        Format::Csv => out = render_csv(rows),
        Format::Json => {
            out.push_str("[\n");
            for (i, row) in rows.iter().enumerate() {
                let fields: Vec<String> = row
                    .cells
                    .iter()
                    .map(|(n, v)| format!("{}: {}", json_string(n), json_cell(v)))
                    .collect();
                let sep = if i + 1 < rows.len() { "," } else { "" };
                let _ = writeln!(out, "  {{{}}}{sep}", fields.join(", "));
            }
            out.push_str("]\n");
        }
    }
    Ok(out)
}

/// Writes `text` to `path`, creating parent directories as needed.
pub fn write_text(path: &Path, text: &str) -> Result<(), ReportError> {
    let io_err = |source| ReportError::Io {
        path: path.display().to_string(),
        source,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io_err)?;
    }
    fs::write(path, text).map_err(io_err)
}

/// Validates, renders and writes a report. Nothing is created on error.
pub fn emit_report(rows: &[ReportRow], path: &Path, format: Format) -> Result<(), ReportError> {
    let text = render(rows, format)?;
    write_text(path, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_has_17_significant_digits() {
        assert_eq!(format_float(1.998), "1.9980000000000000e0");
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(0.0), "0.0000000000000000e0");
        assert_eq!(format_float(1.998).parse::<f64>().unwrap(), 1.998);
    }

    #[test]
    fn csv_escaping() {
        let rows = vec![ReportRow::new().with("a,b", "x\"y").with("n", 3i64)];
        let text = render(&rows, Format::Csv).unwrap();
        assert_eq!(text, "\"a,b\",n\n\"x\"\"y\",3\n");
    }

    #[test]
    fn mismatched_columns_are_rejected() {
        let rows = vec![
            ReportRow::new().with("a", 1i64),
            ReportRow::new().with("b", 1i64),
        ];
        assert!(matches!(render(&rows, Format::Csv), Err(ReportError::ColumnMismatch { row: 1, .. })));
    }

    #[test]
    fn non_finite_is_rejected() {
        let rows = vec![ReportRow::new().with("x", f64::NAN)];
        assert!(matches!(render(&rows, Format::Json), Err(ReportError::NonFinite { .. })));
    }

    #[test]
    fn json_is_parseable() {
        let rows = vec![
            ReportRow::new().with("x", 0.25).with("ok", true).with("s", "hi"),
            ReportRow::new().with("x", -3.5e-12).with("ok", false).with("s", "a\"b"),
        ];
        let text = render(&rows, Format::Json).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed[1]["x"].as_f64().unwrap(), -3.5e-12);
        assert_eq!(parsed[1]["s"].as_str().unwrap(), "a\"b");
    }
}

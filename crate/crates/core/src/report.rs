//! Deterministic output: reals rounded to 12 significant digits, emitted as
//! JSON, CSV or an aligned text table.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Round to 12 significant digits (non-finite values pass through).
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal form of the rounded value.
pub fn fmt_real(x: f64) -> String {
    match x {
        x if x.is_nan() => "nan".into(),
        x if x.is_infinite() => if x > 0.0 { "inf".into() } else { "-inf".into() },
        x => {
            let r = round_sig(x);
            let mag = r.abs();
            // 0.0 and -0.0 both print as 0
            if r == 0.0 {
                "0".into()
            } else if (1e-6..1e15).contains(&mag) {
                format!("{r}")
            } else {
                format!("{r:e}")
            }
        }
    }
}

/// Round every float inside a JSON value.
pub fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

pub fn to_rounded_value<T: Serialize + ?Sized>(x: &T) -> Result<Value> {
    Ok(round_value(serde_json::to_value(x)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

/// A cell of a tabular report.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Real(x) => fmt_real(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Real)
    }
}

impl From<Option<bool>> for Cell {
    fn from(x: Option<bool>) -> Self {
        x.map_or(Cell::Empty, Cell::Bool)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<i64> for Cell {
    fn from(n: i64) -> Self {
        Cell::Int(n)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self { headers: headers.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// Two-column key/value table.
    pub fn key_values(pairs: impl IntoIterator<Item = (&'static str, Cell)>) -> Self {
        let mut t = Self::new(["key", "value"]);
        for (k, v) in pairs {
            t.push(vec![k.into(), v]);
        }
        t
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.headers).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        let rendered: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|i| rendered.iter().map(|r| r[i].len()).chain([self.headers[i].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(out, "{}", line(&self.headers))?;
        for r in &rendered {
            writeln!(out, "{}", line(r))?;
        }
        Ok(())
    }
}

/// What a command produced: a JSON object and its tabular view.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub table: Table,
}

impl Report {
    pub fn new(json: Value, table: Table) -> Self {
        Self { json: round_value(json), table }
    }

    pub fn emit<W: Write>(&self, format: Format, mut out: W) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.json)?;
                writeln!(out)?;
                Ok(())
            }
            Format::Csv => self.table.write_csv(out),
            Format::Table => self.table.write_text(out),
        }
    }
}

/// `{"error": tag, "kind": ..., "message": ...}` for the error stream.
pub fn error_json(err: &Error) -> Value {
    let mut m = Map::new();
    m.insert("error".into(), Value::from(err.tag()));
    m.insert("kind".into(), Value::from(format!("{:?}", err.kind()).to_lowercase()));
    m.insert("message".into(), Value::from(err.to_string()));
    Value::Object(m)
}

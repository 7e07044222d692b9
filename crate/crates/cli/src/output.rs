//! Report records and their text, JSON and CSV renderings.

use std::fmt;

use serde::Serialize;
use serde_json::{Map, Value};
use zpk_core::catalog::BoundCheck;
use zpk_core::{Error, ExactRational};

use crate::Format;

pub const DECIMAL_DIGITS: usize = 20;

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Usage(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::Syntax { .. } | Error::Semantic { .. } | Error::InvalidParameter(_)) => 2,
            Failure::Core(Error::Capacity { .. }) => 3,
            Failure::Core(_) => 1,
            Failure::Usage(_) | Failure::Io(_) => 2,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(m) => f.write_str(m),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

/// The JSON object emitted for every (ring, k) result.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub ring: String,
    pub k: u32,
    pub value: ExactRational,
    pub decimal: String,
    pub bounds: Vec<BoundCheck>,
    pub flags: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl Record {
    pub fn new(ring: impl Into<String>, k: u32, value: ExactRational) -> Self {
        Record {
            ring: ring.into(),
            k,
            decimal: value.to_decimal(DECIMAL_DIGITS),
            value,
            bounds: Vec::new(),
            flags: Map::new(),
            details: None,
        }
    }

    pub fn flag(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.flags.insert(name.to_string(), value.into());
        self
    }

    pub fn flags_from(mut self, v: impl Serialize) -> Self {
        if let Ok(Value::Object(m)) = serde_json::to_value(v) {
            self.flags.extend(m);
        }
        self
    }

    pub fn details(mut self, v: impl Serialize) -> Self {
        self.details = serde_json::to_value(v).ok();
        self
    }
}

/// A rectangular table used for both aligned text and CSV output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table { headers: headers.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let mut s =
                cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ");
            s.truncate(s.trim_end().len());
            s.push('\n');
            s
        };
        let mut out = line(self.headers.clone());
        for row in &self.rows {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out
    }

    pub fn to_csv(&self) -> Result<String, Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Failure::Io(e.to_string());
        w.write_record(&self.headers).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
    }
}

/// What a verb hands back to `main`.
pub struct Output {
    pub rendered: String,
    pub passed: bool,
}

/// Renders `json` for JSON output, `table` for CSV, and `table` followed by
/// `summary` for text.
pub fn render(
    format: Format,
    json: &impl Serialize,
    table: &Table,
    summary: &str,
    passed: bool,
) -> Result<Output, Failure> {
    let rendered = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json).map_err(|e| Failure::Io(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => table.to_csv()?,
        Format::Text => {
            let mut s = table.to_text();
            s.push_str(summary);
            s
        }
    };
    Ok(Output { rendered, passed })
}

pub fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

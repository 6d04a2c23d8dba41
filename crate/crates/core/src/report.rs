//! Streaming CSV / JSON Lines output with a manifest header line.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};
use crate::oracle::format_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// Picks JSON Lines for `.json`/`.jsonl` paths and CSV otherwise.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") | Some("jsonl") => Format::Json,
            _ => Format::Csv,
        }
    }
}

/// One cell of a report row.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    UInt(u64),
    Float(f64),
    Bool(bool),
    Text(String),
    Big(BigInt),
    Ratio(BigRational),
    Null,
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Int(x) => x.to_string(),
            Value::UInt(x) => x.to_string(),
            Value::Float(x) => x.to_string(),
            Value::Bool(x) => x.to_string(),
            Value::Text(x) => x.clone(),
            Value::Big(x) => x.to_string(),
            Value::Ratio(x) => format_rational(x),
            Value::Null => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Int(x) => json!(x),
            Value::UInt(x) => json!(x),
            Value::Float(x) if x.is_finite() => json!(x),
            Value::Float(x) => json!(x.to_string()),
            Value::Bool(x) => json!(x),
            Value::Text(x) => json!(x),
            Value::Big(x) => json!(x.to_string()),
            Value::Ratio(x) => json!({"num": x.numer().to_string(), "den": x.denom().to_string()}),
            Value::Null => Json::Null,
        }
    }
}

macro_rules! value_from {
    ($($t:ty => $v:ident as $c:ty),* $(,)?) => {
        $(impl From<$t> for Value {
            fn from(x: $t) -> Value {
                Value::$v(x as $c)
            }
        })*
    };
}

value_from!(i32 => Int as i64, i64 => Int as i64, u32 => UInt as u64, u64 => UInt as u64, usize => UInt as u64, f64 => Float as f64);

impl From<bool> for Value {
    fn from(x: bool) -> Value {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Value {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Value {
        Value::Text(x)
    }
}

impl From<BigInt> for Value {
    fn from(x: BigInt) -> Value {
        Value::Big(x)
    }
}

impl From<&BigInt> for Value {
    fn from(x: &BigInt) -> Value {
        Value::Big(x.clone())
    }
}

impl From<BigRational> for Value {
    fn from(x: BigRational) -> Value {
        Value::Ratio(x)
    }
}

impl From<&BigRational> for Value {
    fn from(x: &BigRational) -> Value {
        Value::Ratio(x.clone())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(x: Option<T>) -> Value {
        x.map_or(Value::Null, Into::into)
    }
}

/// Provenance of one run, written as the first line of every output file.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub config: Json,
    pub seed: Option<u64>,
    pub version: String,
    pub started: u64,
    pub finished: Option<u64>,
    pub outputs: Vec<PathBuf>,
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl RunManifest {
    pub fn new(subcommand: impl Into<String>, config: Json, seed: Option<u64>) -> Self {
        RunManifest {
            subcommand: subcommand.into(),
            config,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            started: unix_now(),
            finished: None,
            outputs: Vec::new(),
        }
    }

    pub fn finish(&mut self) {
        self.finished = Some(unix_now());
    }

    pub fn header_line(&self) -> String {
        format!("# {}", serde_json::to_string(self).expect("manifest serializes"))
    }
}

/// Writes rows one at a time; nothing is buffered beyond the I/O buffer.
pub struct ReportWriter {
    format: Format,
    columns: Vec<String>,
    csv: Option<csv::Writer<Box<dyn Write>>>,
    raw: Option<Box<dyn Write>>,
    rows: usize,
}

impl ReportWriter {
    pub fn new(
        mut out: Box<dyn Write>,
        format: Format,
        columns: &[&str],
        manifest: Option<&RunManifest>,
    ) -> Result<Self> {
        let columns: Vec<String> = columns.iter().map(|c| c.to_string()).collect();
        if let Some(m) = manifest {
            match format {
                Format::Csv => writeln!(out, "{}", m.header_line())?,
                Format::Json => writeln!(out, "{}", json!({"manifest": m}))?,
            }
        }
        let (csv, raw) = match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&columns)?;
                (Some(w), None)
            }
            Format::Json => (None, Some(out)),
        };
        Ok(ReportWriter {
            format,
            columns,
            csv,
            raw,
            rows: 0,
        })
    }

    /// Opens `path` for writing; failures map to the I/O exit code.
    pub fn create(path: &Path, format: Format, columns: &[&str], manifest: Option<&RunManifest>) -> Result<Self> {
        let file = File::create(path)
            .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
        ReportWriter::new(Box::new(BufWriter::new(file)), format, columns, manifest)
    }

    pub fn stdout(format: Format, columns: &[&str], manifest: Option<&RunManifest>) -> Result<Self> {
        ReportWriter::new(Box::new(io::stdout().lock()), format, columns, manifest)
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn write(&mut self, row: Vec<Value>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::InvalidParameter(format!(
                "row has {} cells for {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        match self.format {
            Format::Csv => {
                let cells: Vec<String> = row.iter().map(Value::csv).collect();
                self.csv.as_mut().unwrap().write_record(&cells)?;
            }
            Format::Json => {
                let obj: Map<String, Json> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Value::json))
                    .collect();
                let out = self.raw.as_mut().unwrap();
                serde_json::to_writer(&mut *out, &obj)?;
                out.write_all(b"\n")?;
            }
        }
        self.rows += 1;
        Ok(())
    }

    /// Flushes and returns the number of rows written.
    pub fn finish(mut self) -> Result<usize> {
        if let Some(w) = self.csv.as_mut() {
            w.flush()?;
        }
        if let Some(w) = self.raw.as_mut() {
            w.flush()?;
        }
        Ok(self.rows)
    }
}

/// Writes all `records` to `out` and returns the row count.
pub fn emit_report<I>(records: I, columns: &[&str], format: Format, out: Box<dyn Write>) -> Result<usize>
where
    I: IntoIterator<Item = Vec<Value>>,
{
    let mut w = ReportWriter::new(out, format, columns, None)?;
    for r in records {
        w.write(r)?;
    }
    w.finish()
}

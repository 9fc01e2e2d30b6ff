//! Rendering of command results as JSON, CSV or text.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};
use welding_core::exact::rational::{fmt_rational, Rational};
use welding_core::numerics::{Estimate, Hp};
use welding_core::{Error, Result};

use crate::args::Format;

/// One command's result in every output format.
#[derive(Debug, Default)]
pub struct Artifact {
    pub json: Value,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
    pub text: String,
    /// Identity failures; any entry makes the process exit with code 2.
    pub failures: Vec<String>,
    /// Lines printed alongside the artifact (the `--verify` table).
    pub notes: Vec<String>,
}

impl Artifact {
    pub fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>, text: String) -> Self {
        Self {
            json,
            csv_header: header.iter().map(|s| s.to_string()).collect(),
            csv_rows: rows,
            text,
            ..Default::default()
        }
    }

    pub fn fail_if(&mut self, failed: bool, what: impl Into<String>) {
        if failed {
            self.failures.push(what.into());
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)
                    .map_err(|e| Error::InvalidInput(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::InvalidInput(e.to_string());
                w.write_record(&self.csv_header).map_err(io)?;
                for r in &self.csv_rows {
                    w.write_record(r).map_err(io)?;
                }
                let bytes = w
                    .into_inner()
                    .map_err(|e| Error::InvalidInput(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                Ok(s)
            }
        }
    }
}

/// Writes `body` to `path`, or to standard output when no path is given.
pub fn emit(body: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, body)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::InvalidInput(format!("cannot write to stdout: {e}")))
        }
    }
}

/// Float formatting with a configurable number of digits: fixed point for
/// `1e-4 <= |v| < 1e15`, scientific otherwise.
#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub digits: usize,
}

impl Style {
    pub fn float(&self, x: &Hp) -> String {
        let a = x.abs();
        if x.is_zero() || (a >= Hp::parse("1e-4") && a < Hp::parse("1e15")) {
            x.to_fixed(self.digits)
        } else {
            x.to_scientific(self.digits)
        }
    }

    pub fn bound(&self, b: &Hp) -> String {
        b.to_scientific(3)
    }

    /// `{"value": ..., "error_bound": ...}`.
    pub fn estimate(&self, e: &Estimate) -> Value {
        json!({ "value": self.float(&e.value), "error_bound": self.bound(&e.error_bound) })
    }

    pub fn estimate_text(&self, e: &Estimate) -> String {
        format!("{} ± {}", self.float(&e.value), self.bound(&e.error_bound))
    }
}

pub fn rational(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

pub fn object(pairs: impl IntoIterator<Item = (String, Value)>) -> Value {
    Value::Object(pairs.into_iter().collect::<Map<_, _>>())
}

pub fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

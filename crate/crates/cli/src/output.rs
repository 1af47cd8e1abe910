use std::fs;
use std::io::Write;

use isodense_core::fmt12;
use serde_json::{Map, Number, Value};

use crate::error::CliError;

/// JSON number rounded to 12 significant digits; non-finite values become null.
pub fn num(x: f64) -> Value {
    let rounded: f64 = fmt12(x).parse().unwrap_or(f64::NAN);
    Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

pub struct Record(Map<String, Value>);

impl Record {
    pub fn new() -> Self {
        Self(Map::new())
    }

    pub fn real(mut self, key: &str, x: f64) -> Self {
        self.0.insert(key.into(), num(x));
        self
    }

    pub fn opt(self, key: &str, x: Option<f64>) -> Self {
        match x {
            Some(x) => self.real(key, x),
            None => self.with(key, Value::Null),
        }
    }

    pub fn text(self, key: &str, s: &str) -> Self {
        self.with(key, Value::String(s.into()))
    }

    pub fn with(mut self, key: &str, v: Value) -> Self {
        self.0.insert(key.into(), v);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.0).expect("maps always serialise");
        s.push('\n');
        s
    }
}

/// Writes to `path`, or to standard output when `path` is `None`.
pub fn emit(path: Option<&str>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| CliError::Io(format!("cannot write {p}: {e}"))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn csv_row(cells: &[String]) -> String {
    let mut s = cells.join(",");
    s.push('\n');
    s
}

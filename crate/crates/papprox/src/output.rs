use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{Map, Number, Value};

/// Round-trip safe JSON number with 17 significant digits; `null` if not finite.
pub fn number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    format!("{x:.16e}").parse::<Number>().map(Value::Number).unwrap_or(Value::Null)
}

/// 17 significant digits for CSV cells.
pub fn csv_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// 10 significant digits, printed in the shortest form.
pub fn text_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.9e}").parse().unwrap_or(x);
    let plain = rounded.to_string();
    if plain.len() <= 16 {
        plain
    } else {
        format!("{rounded:e}")
    }
}

/// A command-specific field of a record.
#[derive(Debug, Clone)]
pub enum Field {
    Num(f64),
    Int(u64),
    Str(String),
    Json(Value),
    /// JSON value with its own multi-line text rendering.
    Table(Value, Vec<String>),
}

impl Field {
    fn json(&self) -> Value {
        match self {
            Field::Num(x) => number(*x),
            Field::Int(k) => Value::from(*k),
            Field::Str(s) => Value::from(s.clone()),
            Field::Json(v) | Field::Table(v, _) => v.clone(),
        }
    }

    fn text(&self) -> String {
        match self {
            Field::Num(x) => text_number(*x),
            Field::Int(k) => k.to_string(),
            Field::Str(s) => s.clone(),
            Field::Json(v) => v.to_string(),
            Field::Table(_, lines) => lines.iter().map(|l| format!("\n    {l}")).collect(),
        }
    }
}

/// One result: the common fields plus command-specific ones.
#[derive(Debug, Clone)]
pub struct Record {
    pub params: Value,
    pub value: Option<f64>,
    pub tail_bound: Option<f64>,
    pub terms_used: Option<u64>,
    pub justification: String,
    pub warnings: Vec<String>,
    pub extra: Vec<(String, Field)>,
}

impl Record {
    pub fn new(params: Value) -> Self {
        Record {
            params,
            value: None,
            tail_bound: None,
            terms_used: None,
            justification: String::new(),
            warnings: Vec::new(),
            extra: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, field: Field) {
        self.extra.push((key.to_string(), field));
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("params".into(), self.params.clone());
        m.insert("value".into(), self.value.map(number).unwrap_or(Value::Null));
        m.insert("tail_bound".into(), self.tail_bound.map(number).unwrap_or(Value::Null));
        m.insert("terms_used".into(), self.terms_used.map(Value::from).unwrap_or(Value::Null));
        m.insert("justification".into(), self.justification.clone().into());
        m.insert("warnings".into(), self.warnings.clone().into());
        for (k, f) in &self.extra {
            m.insert(k.clone(), f.json());
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = Vec::new();
        if let Some(v) = self.value {
            rows.push(("value".into(), text_number(v)));
        }
        if let Some(t) = self.tail_bound {
            rows.push(("tail_bound".into(), text_number(t)));
        }
        if let Some(k) = self.terms_used {
            rows.push(("terms_used".into(), k.to_string()));
        }
        if !self.justification.is_empty() {
            rows.push(("justification".into(), self.justification.clone()));
        }
        rows.extend(self.extra.iter().map(|(k, f)| (k.clone(), f.text())));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

/// Writes to the file if one is given, otherwise to standard output.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

//! Deterministic reports in plain text, LaTeX or JSON.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value as Json};

use crate::arith::ArithClass;
use crate::error::Error;
use crate::graded::GradedPoly;
use crate::json::{class_to_json, poly_to_json, scalar_to_json};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!(
                "unknown format {s:?}; expected json, latex or text"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Scalar),
    Poly(GradedPoly),
    Class(ArithClass),
    Integer(BigInt),
    Text(String),
    Bool(bool),
}

impl Value {
    fn text(&self) -> String {
        match self {
            Value::Scalar(s) => s.to_string(),
            Value::Poly(p) => p.to_string(),
            Value::Class(c) => c.to_string(),
            Value::Integer(n) => n.to_string(),
            Value::Text(t) => t.clone(),
            Value::Bool(b) => b.to_string(),
        }
    }

    fn latex(&self) -> String {
        match self {
            Value::Scalar(s) => s.to_latex(),
            Value::Poly(p) => p.to_latex(),
            Value::Class(c) => c.to_latex(),
            Value::Integer(n) => n.to_string(),
            Value::Text(t) => format!("\\text{{{t}}}"),
            Value::Bool(b) => format!("\\text{{{b}}}"),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Scalar(s) => scalar_to_json(s),
            Value::Poly(p) => poly_to_json(p),
            Value::Class(c) => class_to_json(c),
            Value::Integer(n) => Json::String(n.to_string()),
            Value::Text(t) => Json::String(t.clone()),
            Value::Bool(b) => Json::Bool(*b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub label: String,
    pub latex_label: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    /// `published`, `cross-check` or `property`.
    pub source: String,
    pub items: Vec<CheckItem>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.ok)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub entries: Vec<Entry>,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Report::default()
        }
    }

    pub fn push(&mut self, key: &str, label: &str, latex_label: &str, value: Value) {
        self.entries.push(Entry {
            key: key.to_string(),
            label: label.to_string(),
            latex_label: latex_label.to_string(),
            value,
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Latex => self.render_latex(),
            Format::Json => {
                serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"
            }
        }
    }

    fn render_text(&self) -> String {
        let mut out = format!("# {}\n", self.command);
        for e in &self.entries {
            let _ = writeln!(out, "{} = {}", e.label, e.value.text());
        }
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{status}] {} ({})", c.name, c.source);
            for i in &c.items {
                let mark = if i.ok { "ok" } else { "MISMATCH" };
                let _ = writeln!(out, "  {mark:8} {}", i.label);
                if !i.ok {
                    let _ = writeln!(out, "           expected: {}", i.expected);
                    let _ = writeln!(out, "           computed: {}", i.computed);
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time: {ms} ms");
        }
        out
    }

    fn render_latex(&self) -> String {
        let mut out = format!("% {}\n", self.command);
        for e in &self.entries {
            let _ = writeln!(out, "\\[ {} = {} \\]", e.latex_label, e.value.latex());
        }
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "fail" };
            let _ = writeln!(out, "% {status}: {} ({})", c.name, c.source);
            for i in c.items.iter().filter(|i| !i.ok) {
                let _ = writeln!(
                    out,
                    "%   {}: expected {} computed {}",
                    i.label, i.expected, i.computed
                );
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "% {n}");
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "% time: {ms} ms");
        }
        out
    }

    pub fn to_json(&self) -> Json {
        let mut results = Map::new();
        for e in &self.entries {
            results.insert(e.key.clone(), e.value.json());
        }
        let checks: Vec<Json> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "source": c.source,
                    "passed": c.passed(),
                    "items": c.items.iter().map(|i| json!({
                        "label": i.label,
                        "expected": i.expected,
                        "computed": i.computed,
                        "ok": i.ok,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("command".into(), Json::String(self.command.clone()));
        obj.insert("results".into(), Json::Object(results));
        if !self.checks.is_empty() {
            obj.insert("passed".into(), Json::Bool(self.passed()));
            obj.insert("checks".into(), Json::Array(checks));
        }
        if !self.notes.is_empty() {
            obj.insert("notes".into(), json!(self.notes));
        }
        if let Some(ms) = self.timing_ms {
            obj.insert("time_ms".into(), json!(ms));
        }
        Json::Object(obj)
    }
}

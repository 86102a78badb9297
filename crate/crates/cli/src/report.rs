//! A command's result, rendered either for people or for scripts.
//!
//! Both renderings come from the same [`Report`]. Text mode shows numbers to
//! 6 significant digits; structured mode is JSON whose numbers parse back to
//! the identical `f64`.

use gleason_core::numerics::SymMatrix;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Bool(bool),
    Integer(i64),
    Number(f64),
    Text(String),
    Vector(Vec<f64>),
    Matrix(Vec<Vec<f64>>),
    List(Vec<Value>),
    Record(Vec<Entry>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Entry>,
    pub verdicts: Vec<Entry>,
}

impl From<&SymMatrix> for Value {
    fn from(m: &SymMatrix) -> Self {
        Value::Matrix(m.to_rows())
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Number(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Integer(v as i64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.into())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<Vec<f64>> for Value {
    fn from(v: Vec<f64>) -> Self {
        Value::Vector(v)
    }
}

pub fn entry(name: &str, value: impl Into<Value>) -> Entry {
    Entry { name: name.into(), value: value.into() }
}

pub fn record(entries: Vec<Entry>) -> Value {
    Value::Record(entries)
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), inputs: Vec::new(), verdicts: Vec::new() }
    }

    pub fn input(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.push(entry(name, value));
        self
    }

    pub fn verdict(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.verdicts.push(entry(name, value));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.verdicts.iter().find(|e| e.name == name).map(|e| &e.value)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = format!("command: {}\n", self.command);
                for e in self.inputs.iter().chain(&self.verdicts) {
                    write_entry(&mut out, e, 0);
                }
                out
            }
        }
    }
}

fn write_entry(out: &mut String, e: &Entry, indent: usize) {
    let pad = "  ".repeat(indent);
    match &e.value {
        Value::Matrix(rows) => {
            out.push_str(&format!("{pad}{}:\n", e.name));
            for r in rows {
                let cells: Vec<String> = r.iter().map(|v| format!("{:>12}", sig6(*v))).collect();
                out.push_str(&format!("{pad}  {}\n", cells.join(" ")));
            }
        }
        Value::Record(entries) => {
            out.push_str(&format!("{pad}{}:\n", e.name));
            for sub in entries {
                write_entry(out, sub, indent + 1);
            }
        }
        Value::List(items) if items.iter().any(|v| matches!(v, Value::Record(_) | Value::Matrix(_))) => {
            out.push_str(&format!("{pad}{}:\n", e.name));
            for (i, v) in items.iter().enumerate() {
                write_entry(out, &Entry { name: format!("[{i}]"), value: v.clone() }, indent + 1);
            }
        }
        v => out.push_str(&format!("{pad}{}: {}\n", e.name, inline(v))),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Bool(b) => b.to_string(),
        Value::Integer(i) => i.to_string(),
        Value::Number(x) => sig6(*x),
        Value::Text(s) => s.clone(),
        Value::Vector(xs) => {
            format!("({})", xs.iter().map(|x| sig6(*x)).collect::<Vec<_>>().join(", "))
        }
        Value::List(items) => items.iter().map(inline).collect::<Vec<_>>().join(", "),
        Value::Matrix(_) | Value::Record(_) => unreachable!("rendered as blocks"),
    }
}

/// Six significant digits, trailing zeros trimmed.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    // the exponent after rounding decides the notation, as with %g
    let sci = format!("{x:.5e}");
    let (mant, exp) = sci.split_once('e').unwrap();
    let mag: i32 = exp.parse().unwrap();
    if !(-4..6).contains(&mag) {
        return format!("{}e{exp}", trim(mant));
    }
    let decimals = (5 - mag).max(0) as usize;
    let s = trim(&format!("{x:.decimals$}"));
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').into()
    } else {
        s.into()
    }
}

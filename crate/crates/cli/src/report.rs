//! Run reports and their text and json emission.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub reports: Vec<Value>,
    pub exit_code: u8,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, reports: Vec<Value>, exit_code: u8) -> Self {
        Self {
            command: command.to_string(),
            inputs: round_value(inputs),
            reports: reports.into_iter().map(round_value).collect(),
            exit_code,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("json values serialize");
                s.push('\n');
                s
            }
            OutputFormat::Text => {
                let mut s = String::new();
                let _ = writeln!(s, "command: {}", self.command);
                write_field(&mut s, 0, "inputs", &self.inputs);
                for (i, r) in self.reports.iter().enumerate() {
                    write_field(&mut s, 0, &format!("report {}", i + 1), r);
                }
                let _ = writeln!(s, "exit_code: {}", self.exit_code);
                s
            }
        }
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// `x` rounded to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

pub fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(f64::NAN));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

fn write_field(s: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    if is_leaf(v) {
        let _ = writeln!(s, "{pad}{key}: {}", inline(v));
        return;
    }
    let _ = writeln!(s, "{pad}{key}:");
    match v {
        Value::Object(o) => write_object(s, depth + 1, o),
        Value::Array(a) => {
            for (i, item) in a.iter().enumerate() {
                write_field(s, depth + 1, &format!("[{i}]"), item);
            }
        }
        _ => unreachable!(),
    }
}

fn write_object(s: &mut String, depth: usize, o: &Map<String, Value>) {
    for (k, v) in o {
        write_field(s, depth, k, v);
    }
}

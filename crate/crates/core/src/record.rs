//! JSON result records. Exact numbers are emitted as strings next to a
//! decimal rendering.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::berger::QSqrt5;
use crate::field::{fmt_q, q_to_f64, Q};
use crate::lie::Weight;

pub fn q_json(x: &Q) -> Value {
    json!({ "exact": fmt_q(x), "decimal": q_to_f64(x) })
}

pub fn k_json(x: &QSqrt5) -> Value {
    json!({ "exact": x.to_string(), "decimal": x.to_f64() })
}

pub fn weight_json(w: &Weight) -> Value {
    json!(w.0)
}

/// One command invocation and its outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub command: String,
    pub space: Option<String>,
    pub inputs: Value,
    pub result: Value,
    /// Every reported number is exact (no floating-point fallback).
    pub exact: bool,
    pub minimizers: Vec<Vec<i64>>,
    pub passed: bool,
    pub version: String,
}

impl Record {
    pub fn new(command: &str, space: Option<&str>, inputs: Value) -> Self {
        Record {
            command: command.to_string(),
            space: space.map(str::to_string),
            inputs,
            result: Value::Object(Map::new()),
            exact: true,
            minimizers: Vec::new(),
            passed: true,
            version: crate::VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("record serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    /// Indented plain-text rendering.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.command);
        if let Some(s) = &self.space {
            out.push(' ');
            out.push_str(s);
        }
        out.push_str(if self.passed { ": PASS\n" } else { ": FAIL\n" });
        if !self.minimizers.is_empty() {
            let ms: Vec<String> = self.minimizers.iter().map(|m| format!("{m:?}")).collect();
            out.push_str(&format!("  minimizers: {}\n", ms.join(" ")));
        }
        if let Value::Object(map) = &self.result {
            for (k, v) in map {
                render(&mut out, k, v, 1);
            }
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Object(m) if m.contains_key("exact") && m.len() == 2 => {
            let Some(e) = m["exact"].as_str() else {
                return Some(format!("≈ {}", m["decimal"]));
            };
            match m["decimal"].as_f64() {
                Some(d) if e.contains('/') || e.contains('√') => Some(format!("{e} (≈ {d:.6})")),
                _ => Some(e.to_string()),
            }
        }
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null => Some("-".into()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_))) => {
            Some(format!("[{}]", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    match v {
        Value::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in m {
                render(out, k, x, depth + 1);
            }
        }
        Value::Array(a) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for x in a {
                match (scalar(x), x) {
                    (Some(s), _) => out.push_str(&format!("{pad}  - {s}\n")),
                    (None, Value::Object(m)) if m.values().any(|y| scalar(y).is_none()) => {
                        let mut it = m.iter();
                        if let Some((k, y)) = it.next() {
                            out.push_str(&format!("{pad}  - {k}: {}\n", scalar(y).unwrap_or_default()));
                            if scalar(y).is_none() {
                                render(out, k, y, depth + 2);
                            }
                        }
                        for (k, y) in it {
                            render(out, k, y, depth + 2);
                        }
                    }
                    (None, Value::Object(m)) => {
                        let parts: Vec<String> =
                            m.iter().map(|(k, y)| format!("{k}={}", scalar(y).unwrap_or_else(|| y.to_string()))).collect();
                        out.push_str(&format!("{pad}  - {}\n", parts.join(", ")));
                    }
                    (None, _) => out.push_str(&format!("{pad}  - {x}\n")),
                }
            }
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn exact_strings_and_round_trip() {
        assert_eq!(q_json(&q(25, 4)), json!({"exact": "25/4", "decimal": 6.25}));
        let mut r = Record::new("lambda1", Some("S5"), json!({"budget": 10}));
        r.result = json!({"lambda1": q_json(&q(25, 4))});
        r.minimizers = vec![vec![0, 0, 1]];
        let back: Record = serde_json::from_value(r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.summary().contains("25/4"));
    }
}

//! Output envelope and renderers.
//!
//! JSON output is pretty printed with sorted keys. Rationals are strings,
//! integers are JSON numbers, and no floats are ever emitted.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use t237::exact_algebra::{Order, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub args: Value,
    pub status: &'static str,
    pub message: Option<String>,
    pub results: Value,
}

impl Report {
    pub fn ok(command: &str, args: Value, results: Value) -> Self {
        Report {
            command: command.to_string(),
            args,
            status: "ok",
            message: None,
            results,
        }
    }

    pub fn error(command: &str, args: Value, message: &str) -> Self {
        Report {
            command: command.to_string(),
            args,
            status: "error",
            message: Some(message.to_string()),
            results: Value::Null,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "args": self.args,
            "status": self.status,
            "message": self.message,
            "results": self.results,
        })
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
            s.push('\n');
            s
        } else if let Some(msg) = &self.message {
            format!("status: {}\nmessage: {msg}\n", self.status)
        } else {
            let mut out = String::new();
            render_value(&mut out, &self.results, 0);
            out
        }
    }
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rationals<'a>(rs: impl IntoIterator<Item = &'a Rational>) -> Value {
    Value::Array(rs.into_iter().map(rational).collect())
}

/// Coefficients from the constant term up.
pub fn poly(p: &UniPoly) -> Value {
    rationals(p.coeffs())
}

pub fn bigint(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub fn order(o: Order) -> Value {
    match o {
        Order::Finite(k) => Value::from(k),
        Order::Infinite => Value::String("inf".into()),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|i| match i {
                    Value::Array(_) | Value::Object(_) => None,
                    other => scalar(other),
                })
                .collect();
            parts.map(|p| format!("[{}]", p.join(",")))
        }
        Value::Object(_) => None,
    }
}

fn cell(v: &Value) -> String {
    scalar(v).unwrap_or_else(|| serde_json::to_string(v).expect("values serialize"))
}

fn is_table(items: &[Value]) -> bool {
    !items.is_empty()
        && items.iter().all(|i| match i {
            Value::Object(m) => m.values().all(|v| scalar(v).is_some() || matches!(v, Value::Object(_))),
            _ => false,
        })
}

fn render_table(out: &mut String, rows: &[Value], indent: usize) {
    let mut columns: Vec<&String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !columns.contains(&k) {
                    columns.push(k);
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| columns.iter().map(|c| r.get(c.as_str()).map(cell).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|row| row[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let pad = " ".repeat(indent);
    let line = |items: Vec<&str>| -> String {
        let parts: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        format!("{pad}{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(columns.iter().map(|c| c.as_str()).collect()));
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
}

fn render_map(out: &mut String, m: &Map<String, Value>, indent: usize) {
    let pad = " ".repeat(indent);
    for (k, v) in m {
        if let Some(s) = scalar(v) {
            out.push_str(&format!("{pad}{k}: {s}\n"));
        } else {
            out.push_str(&format!("{pad}{k}:\n"));
            render_value(out, v, indent + 2);
        }
    }
}

fn render_value(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Object(m) => render_map(out, m, indent),
        Value::Array(items) if is_table(items) => render_table(out, items, indent),
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{}{s}\n", " ".repeat(indent))),
                    None => {
                        out.push_str(&format!("{}-\n", " ".repeat(indent)));
                        render_value(out, item, indent + 2);
                    }
                }
            }
        }
        other => out.push_str(&format!("{}{}\n", " ".repeat(indent), cell(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use t237::exact_algebra::{int, rat};

    #[test]
    fn scalars_and_lists() {
        assert_eq!(rational(&rat(-6, 13)), json!("-6/13"));
        assert_eq!(rational(&int(3)), json!("3"));
        assert_eq!(order(Order::Infinite), json!("inf"));
        assert_eq!(bigint(&BigInt::from(5)), json!(5));
        let huge: BigInt = BigInt::from(10).pow(30);
        assert_eq!(bigint(&huge), json!(huge.to_string()));
        let mut s = String::new();
        render_value(&mut s, &json!({"chain": [2, 2, 2, 2, 2, 2]}), 0);
        assert_eq!(s, "chain: [2,2,2,2,2,2]\n");
    }

    #[test]
    fn tables_align() {
        let mut s = String::new();
        render_value(&mut s, &json!([{"n": 1, "delta": "0"}, {"n": 10, "delta": "-6/13"}]), 0);
        assert_eq!(s, "delta  n\n0      1\n-6/13  10\n");
    }

    #[test]
    fn json_keys_are_sorted() {
        let r = Report::ok("x", json!({"b": 1, "a": 2}), json!({"z": 1, "y": [1]}));
        let text = r.render(true);
        let a = text.find("\"a\"").unwrap();
        let b = text.find("\"b\"").unwrap();
        assert!(a < b);
        assert!(text.find("\"args\"").unwrap() < text.find("\"command\"").unwrap());
    }
}

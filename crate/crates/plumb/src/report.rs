//! Command results: the JSON envelope and the text rendering of a payload.
//!
//! Text output is rendered from the same JSON payload, so both formats carry
//! identical numbers.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use plumb_core::cycle::DisplayRational;
use plumb_core::{Cycle, PlumbingGraph, RatCycle};
use serde_json::{json, Map, Value};

/// Outcome of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub graph: Option<String>,
    pub payload: Value,
    pub oracle_checked: bool,
    /// Vertex-id lists of the graphs involved; objects keyed by exactly one
    /// of these lists are cycles and render as coefficient lists.
    pub id_lists: Vec<Vec<String>>,
    /// Graph written by `--dot`.
    pub dot_graph: Option<PlumbingGraph>,
    /// Replaces the rendered text (graph files printed by `example`, `gen`).
    pub raw_text: Option<String>,
    /// Extra lines appended to the text output.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, graph: Option<&PlumbingGraph>, payload: Value) -> Self {
        Report {
            command,
            graph: graph.map(graph_label),
            payload,
            oracle_checked: false,
            id_lists: graph.map(ids).into_iter().collect(),
            dot_graph: graph.cloned(),
            raw_text: None,
            notes: Vec::new(),
        }
    }

    pub fn envelope(&self, stable: bool) -> Value {
        let mut env = json!({
            "command": self.command,
            "graph": self.graph,
            "payload": self.payload,
            "oracle_checked": self.oracle_checked,
        });
        if !stable {
            let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            env["generated_at"] = json!(now);
        }
        env
    }

    pub fn text(&self) -> String {
        if let Some(raw) = &self.raw_text {
            return raw.clone();
        }
        let mut out = String::new();
        if let Some(g) = &self.graph {
            let _ = writeln!(out, "graph: {g}");
        }
        if let Value::Object(map) = &self.payload {
            for (k, v) in map {
                self.render(&mut out, k, v);
            }
        }
        if self.oracle_checked {
            out.push_str("oracle_checked: true\n");
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }

    fn is_cycle(&self, map: &Map<String, Value>) -> bool {
        self.id_lists.iter().any(|ids| ids.len() == map.len() && ids.iter().zip(map.keys()).all(|(a, b)| a == b))
    }

    fn render(&self, out: &mut String, key: &str, v: &Value) {
        match v {
            Value::Object(map) if self.is_cycle(map) => {
                let coeffs: Vec<String> = map.values().map(scalar).collect();
                let _ = writeln!(out, "{key}: {}", coeffs.join(" "));
            }
            Value::Object(map) => {
                for (k, sub) in map {
                    self.render(out, &format!("{key}.{k}"), sub);
                }
            }
            Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                let _ = writeln!(out, "{}", format!("{key}: {}", parts.join(" ")).trim_end());
            }
            Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    self.render(out, &format!("{key}[{i}]"), item);
                }
            }
            other => {
                let _ = writeln!(out, "{key}: {}", scalar(other));
            }
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Graph name, or `unnamed`.
pub fn graph_label(g: &PlumbingGraph) -> String {
    g.name().unwrap_or("unnamed").to_owned()
}

pub fn ids(g: &PlumbingGraph) -> Vec<String> {
    g.ids().iter().map(|v| v.as_str().to_owned()).collect()
}

pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Integers as JSON numbers (strings when beyond `i64`), others as `"p/q"`.
pub fn rational_json(q: &BigRational) -> Value {
    if q.is_integer() {
        int_json(q.numer())
    } else {
        json!(DisplayRational(q).to_string())
    }
}

pub fn cycle_json(g: &PlumbingGraph, c: &Cycle) -> Value {
    Value::Object(g.ids().iter().zip(c.coeffs()).map(|(id, &x)| (id.as_str().to_owned(), json!(x))).collect())
}

pub fn ratcycle_json(g: &PlumbingGraph, c: &RatCycle) -> Value {
    Value::Object(g.ids().iter().zip(c.coeffs()).map(|(id, q)| (id.as_str().to_owned(), rational_json(q))).collect())
}

pub fn id_list_json(g: &PlumbingGraph, vs: &[usize]) -> Value {
    json!(vs.iter().map(|&v| g.id(v).as_str()).collect::<Vec<_>>())
}

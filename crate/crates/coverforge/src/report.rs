//! Rendering of results as JSON documents or as plain text.
//!
//! The text form is derived from the JSON document: a few summary lines,
//! then one `path: value` line per leaf, in document order.

use coverforge_core::abgrp::{FgAbGroup, GroupElt};
use coverforge_core::fan::{CoverSpec, Fan, Sublattice};
use coverforge_core::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn matrix_columns(cols: &[Vec<BigInt>]) -> Value {
    Value::Array(cols.iter().map(|c| ints(c)).collect())
}

pub fn group(g: &FgAbGroup) -> Value {
    json!({
        "structure": g.structure(),
        "invariant_factors": ints(&g.invariant_factors()),
        "free_rank": g.free_rank(),
        "order": g.order().map_or(Value::Null, |o| int(&o)),
    })
}

/// Elements in canonical coordinates: torsion factors first, then free.
pub fn elements(g: &FgAbGroup, elts: &[GroupElt]) -> Value {
    Value::Array(
        elts.iter()
            .map(|e| ints(&g.canonical(e).expect("element of this group")))
            .collect(),
    )
}

pub fn sublattice(s: &Sublattice) -> Value {
    json!({
        "rank": s.ambient_rank(),
        "basis": matrix_columns(&s.basis().columns()),
    })
}

pub fn fan(f: &Fan) -> Value {
    json!({
        "rank": f.rank(),
        "rays": matrix_columns(f.rays()),
        "cones": f.cones(),
        "complete": f.is_complete(),
    })
}

pub fn cover_spec(c: &CoverSpec) -> anyhow::Result<Value> {
    Ok(json!({
        "galois_group": group(c.galois_group()),
        "sublattice": sublattice(c.sublattice()),
        "index": int(&c.sublattice().index()),
        "ram_orders": ints(c.ram_orders()),
        "branch_elements": elements(c.galois_group(), &c.branch_elements()),
        "covering_fan": fan(&c.covering_fan()?),
    }))
}

/// The result of one command.
#[derive(Debug, Clone)]
pub struct Report {
    pub summary: Vec<String>,
    pub doc: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, mode: &str) -> Self {
        let mut doc = Map::new();
        doc.insert("command".into(), command.into());
        doc.insert("mode".into(), mode.into());
        Report {
            summary: Vec::new(),
            doc,
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.doc.insert(key.into(), value);
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    pub fn to_json(&self) -> String {
        let mut doc = self.doc.clone();
        doc.insert(
            "summary".into(),
            Value::Array(self.summary.iter().cloned().map(Value::String).collect()),
        );
        serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.summary {
            out.push_str(s);
            out.push('\n');
        }
        if !self.summary.is_empty() {
            out.push('\n');
        }
        flatten("", &Value::Object(self.doc.clone()), &mut out);
        out
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && is_flat(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if !is_flat(v) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        _ => out.push_str(&format!("{prefix}: {v}\n")),
    }
}

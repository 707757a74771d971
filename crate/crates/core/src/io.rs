//! JSON documents for graphs and local-operator sequences.
//!
//! Graph documents look like
//! `{"q": 3, "n": 3, "edges": [[0, 1, 1], [1, 2, 1]]}`. Extension fields add
//! `"k"` and `"modulus"` (constant term first) and write each label as a
//! coefficient list. Absent edges have label zero, so a listed zero label is
//! rejected, as is a repeated pair or a self-loop.
//!
//! Operator sequences look like
//! `[{"op": "star", "v": 1, "a": 1}, {"op": "circ", "v": 0, "b": 2}]`.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::graph::{LabeledGraph, LocalOp};

fn perr(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        perr(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })
}

fn as_uint(v: &Value, loc: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| perr(loc, "expected a nonnegative integer"))
}

/// Integer k-th root of `q` if `q` is an exact k-th power.
fn exact_root(q: u64, k: u32) -> Option<u64> {
    let guess = (q as f64).powf(1.0 / k as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&r| r.checked_pow(k) == Some(q))
}

/// Field described by the `q`, `k`, `modulus` keys of a graph document.
pub fn field_from_document(obj: &serde_json::Map<String, Value>) -> Result<Field> {
    let q = as_uint(obj.get("q").ok_or_else(|| perr("q", "missing field order"))?, "q")?;
    let k = match obj.get("k") {
        None => 1,
        Some(v) => as_uint(v, "k")? as u32,
    };
    if k == 0 {
        return Err(perr("k", "extension degree must be at least 1"));
    }
    let p = exact_root(q, k).ok_or_else(|| perr("q", format!("{q} is not a {k}-th power")))?;
    let modulus = match obj.get("modulus") {
        None => None,
        Some(Value::Array(items)) => Some(
            items
                .iter()
                .enumerate()
                .map(|(i, c)| as_uint(c, &format!("modulus[{i}]")))
                .collect::<Result<Vec<_>>>()?,
        ),
        Some(_) => return Err(perr("modulus", "expected a coefficient list")),
    };
    Field::from_parts(p, k, modulus.as_deref()).map_err(|e| perr("q", e.to_string()))
}

/// A scalar written as an integer (prime fields; for extensions the constant
/// term) or as a coefficient list.
pub fn parse_scalar(field: &Field, v: &Value, loc: &str) -> Result<Fe> {
    match v {
        Value::Number(_) => {
            let c = as_uint(v, loc)?;
            if c >= field.p() {
                return Err(perr(loc, format!("value {c} out of range for characteristic {}", field.p())));
            }
            field.from_coeffs(&[c]).map_err(|e| perr(loc, e.to_string()))
        }
        Value::Array(items) => {
            let coeffs = items
                .iter()
                .enumerate()
                .map(|(i, c)| as_uint(c, &format!("{loc}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            field.from_coeffs(&coeffs).map_err(|e| perr(loc, e.to_string()))
        }
        _ => Err(perr(loc, "expected an integer or coefficient list")),
    }
}

/// JSON rendering of a scalar.
pub fn scalar_json(field: &Field, a: Fe) -> String {
    if field.is_prime_field() {
        a.code().to_string()
    } else {
        let coeffs: Vec<String> = field.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", coeffs.join(","))
    }
}

pub fn scalar_value(field: &Field, a: Fe) -> Value {
    if field.is_prime_field() {
        Value::from(a.code())
    } else {
        Value::from(field.coeffs(a))
    }
}

/// Parse a graph document.
pub fn parse_graph(text: &str) -> Result<LabeledGraph> {
    graph_from_value(&parse_value(text)?)
}

pub fn graph_from_value(doc: &Value) -> Result<LabeledGraph> {
    let obj = doc.as_object().ok_or_else(|| perr("document", "expected a JSON object"))?;
    if let Some(key) = obj
        .keys()
        .find(|k| !matches!(k.as_str(), "q" | "k" | "modulus" | "n" | "edges"))
    {
        return Err(perr(key.as_str(), "unknown key"));
    }
    let field = field_from_document(obj)?;
    let n = as_uint(obj.get("n").ok_or_else(|| perr("n", "missing vertex count"))?, "n")? as usize;
    if n == 0 {
        return Err(perr("n", "a graph needs at least one vertex"));
    }
    let edges = match obj.get("edges") {
        None => &[][..],
        Some(Value::Array(items)) => &items[..],
        Some(_) => return Err(perr("edges", "expected an array")),
    };
    let mut g = LabeledGraph::empty(&field, n);
    for (idx, e) in edges.iter().enumerate() {
        let loc = format!("edges[{idx}]");
        let triple = e
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| perr(&loc, "expected [i, j, label]"))?;
        let i = as_uint(&triple[0], &loc)? as usize;
        let j = as_uint(&triple[1], &loc)? as usize;
        if i >= n || j >= n {
            return Err(perr(&loc, format!("vertex out of range for n = {n}")));
        }
        if i == j {
            return Err(perr(&loc, "nonzero diagonal: self-loops are not allowed"));
        }
        let label = parse_scalar(&field, &triple[2], &format!("{loc}[2]"))?;
        if label.is_zero() {
            return Err(perr(&loc, "zero label listed; omit absent edges"));
        }
        if !g.get(i, j).is_zero() {
            return Err(perr(&loc, format!("duplicate entry for edge {{{i}, {j}}}")));
        }
        g.set_edge(i, j, label)?;
    }
    Ok(g)
}

/// Canonical JSON text of a graph: edges once with `i < j`, row-major.
pub fn serialize_graph(g: &LabeledGraph) -> String {
    let field = g.field();
    let mut out = format!("{{\"q\":{}", field.q());
    if !field.is_prime_field() {
        let m: Vec<String> = field.spec().modulus().iter().map(|c| c.to_string()).collect();
        out.push_str(&format!(",\"k\":{},\"modulus\":[{}]", field.k(), m.join(",")));
    }
    let edges: Vec<String> = g
        .edges()
        .into_iter()
        .map(|(i, j, a)| format!("[{i},{j},{}]", scalar_json(field, a)))
        .collect();
    out.push_str(&format!(",\"n\":{},\"edges\":[{}]}}", g.n(), edges.join(",")));
    out
}

pub fn graph_to_value(g: &LabeledGraph) -> Value {
    serde_json::from_str(&serialize_graph(g)).expect("serializer emits valid JSON")
}

/// Parse an operator sequence with scalars in `field`, for a graph on `n`
/// vertices.
pub fn parse_ops(field: &Field, n: usize, text: &str) -> Result<Vec<LocalOp>> {
    ops_from_value(field, n, &parse_value(text)?)
}

pub fn ops_from_value(field: &Field, n: usize, doc: &Value) -> Result<Vec<LocalOp>> {
    let items = doc.as_array().ok_or_else(|| perr("document", "expected a JSON array"))?;
    items
        .iter()
        .enumerate()
        .map(|(idx, item)| {
            let loc = format!("[{idx}]");
            let obj = item.as_object().ok_or_else(|| perr(&loc, "expected an object"))?;
            let v = as_uint(obj.get("v").ok_or_else(|| perr(&loc, "missing \"v\""))?, &format!("{loc}.v"))?
                as usize;
            if v >= n {
                return Err(perr(format!("{loc}.v"), format!("vertex {v} out of range for n = {n}")));
            }
            match obj.get("op").and_then(Value::as_str) {
                Some("star") => {
                    let a = obj.get("a").ok_or_else(|| perr(&loc, "missing \"a\""))?;
                    Ok(LocalOp::Star { v, a: parse_scalar(field, a, &format!("{loc}.a"))? })
                }
                Some("circ") => {
                    let b = obj.get("b").ok_or_else(|| perr(&loc, "missing \"b\""))?;
                    let b = parse_scalar(field, b, &format!("{loc}.b"))?;
                    if b.is_zero() {
                        return Err(perr(format!("{loc}.b"), "circ requires a nonzero scalar"));
                    }
                    Ok(LocalOp::Circ { v, b })
                }
                _ => Err(perr(format!("{loc}.op"), "expected \"star\" or \"circ\"")),
            }
        })
        .collect()
}

pub fn serialize_ops(field: &Field, ops: &[LocalOp]) -> String {
    let parts: Vec<String> = ops
        .iter()
        .map(|op| match *op {
            LocalOp::Star { v, a } => format!("{{\"op\":\"star\",\"v\":{v},\"a\":{}}}", scalar_json(field, a)),
            LocalOp::Circ { v, b } => format!("{{\"op\":\"circ\",\"v\":{v},\"b\":{}}}", scalar_json(field, b)),
        })
        .collect();
    format!("[{}]", parts.join(","))
}

pub fn ops_to_value(field: &Field, ops: &[LocalOp]) -> Value {
    serde_json::from_str(&serialize_ops(field, ops)).expect("serializer emits valid JSON")
}

//! JSON file formats and DOT export.
//!
//! Exact scalars are written as strings `"n"` or `"n/d"`; integers are also
//! accepted on input. Complex entries are `[re, im]` pairs.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use num::Zero;
use serde_json::{json, Value};

use crate::bundle::{CanonicalBundleForm, Gluing, MatrixGluing, ScalarGluing};
use crate::error::{Error, Result};
use crate::field::{format_q, parse_q, Gq, Q};
use crate::graph::counting::CountingReport;
use crate::graph::flip::Nest;
use crate::graph::{GraphFile, TrivalentGraph};
use crate::mat2::Mat2;
use crate::reps::Representation;

fn io_error(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io { path: path.display().to_string(), message: e.to_string() }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| io_error(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_error(path, e))
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

pub fn load_graph(path: &Path) -> Result<TrivalentGraph> {
    read_json::<GraphFile>(path)?.to_graph()
}

pub fn scalar_to_json(x: &Q) -> Value {
    Value::String(format_q(x))
}

pub fn scalar_from_json(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) if n.is_i64() => parse_q(&n.to_string()),
        _ => Err(Error::Parse(format!("expected an exact scalar, found {v}"))),
    }
}

fn complex_to_json(z: &Gq) -> Value {
    json!([format_q(&z.re), format_q(&z.im)])
}

fn complex_from_json(v: &Value) -> Result<Gq> {
    match v {
        Value::Array(parts) if parts.len() == 2 => Ok(Gq::new(scalar_from_json(&parts[0])?, scalar_from_json(&parts[1])?)),
        other => Ok(Gq::new(scalar_from_json(other)?, Q::from_integer(0.into()))),
    }
}

pub fn matrix_to_json(m: &Mat2) -> Value {
    Value::Array(m.0.iter().map(|row| Value::Array(row.iter().map(complex_to_json).collect())).collect())
}

pub fn matrix_from_json(v: &Value) -> Result<Mat2> {
    let bad = || Error::Parse(format!("expected a 2×2 matrix, found {v}"));
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
    let mut out = Mat2::identity();
    for (i, row) in rows.iter().enumerate() {
        let cells = row.as_array().filter(|c| c.len() == 2).ok_or_else(bad)?;
        for (j, c) in cells.iter().enumerate() {
            out.0[i][j] = complex_from_json(c)?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGluing {
    Scalar(ScalarGluing),
    Matrix(MatrixGluing),
}

impl AnyGluing {
    pub fn rank(&self) -> u8 {
        match self {
            AnyGluing::Scalar(_) => 1,
            AnyGluing::Matrix(_) => 2,
        }
    }
}

/// `{"rank", "edges": {id: {"value", "orientation": [v_s, v_t]}}}`. The
/// value is read along `orientation`; when it is omitted the reference
/// direction of the edge is used.
pub fn bundle_to_json(g: &TrivalentGraph, a: &AnyGluing) -> Value {
    let mut edges = serde_json::Map::new();
    for e in 0..g.n_edges() {
        let (s, t) = g.ends(e);
        let value = match a {
            AnyGluing::Scalar(x) => scalar_to_json(&x.values()[e]),
            AnyGluing::Matrix(m) => matrix_to_json(&m.values()[e]),
        };
        edges.insert(e.to_string(), json!({"value": value, "orientation": [s, t]}));
    }
    json!({"rank": a.rank(), "edges": edges})
}

pub fn bundle_from_json(g: &TrivalentGraph, v: &Value) -> Result<AnyGluing> {
    let rank = v.get("rank").and_then(Value::as_u64).ok_or_else(|| Error::Parse("bundle needs \"rank\": 1 or 2".into()))?;
    let edges = v.get("edges").and_then(Value::as_object).ok_or_else(|| Error::Parse("bundle needs an \"edges\" object".into()))?;
    if edges.len() != g.n_edges() {
        return Err(Error::DimensionMismatch(format!("{} bundle edges for {} graph edges", edges.len(), g.n_edges())));
    }
    let mut entries: Vec<(&Value, bool)> = Vec::with_capacity(g.n_edges());
    for e in 0..g.n_edges() {
        let rec = edges.get(&e.to_string()).ok_or_else(|| Error::Parse(format!("bundle is missing edge {e}")))?;
        let (value, orientation) = match rec.get("value") {
            Some(value) => (value, rec.get("orientation")),
            None => (rec, None),
        };
        let reversed = match orientation {
            None => false,
            Some(o) => {
                let pair: [usize; 2] = serde_json::from_value(o.clone())
                    .map_err(|_| Error::Parse(format!("bad orientation on edge {e}")))?;
                let (s, t) = g.ends(e);
                if pair == [s, t] {
                    false
                } else if pair == [t, s] {
                    true
                } else {
                    return Err(Error::InvalidGluing { edge: e, reason: "orientation does not match the edge's ends" });
                }
            }
        };
        entries.push((value, reversed));
    }
    match rank {
        1 => {
            let vals = entries
                .iter()
                .map(|(v, rev)| {
                    let x = scalar_from_json(v)?;
                    Ok(if *rev && !x.is_zero() { x.recip() } else { x })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyGluing::Scalar(Gluing::new(g, vals)?))
        }
        2 => {
            let vals = entries
                .iter()
                .map(|(v, rev)| {
                    let m = matrix_from_json(v)?;
                    Ok(if *rev { m.inverse() } else { m })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyGluing::Matrix(Gluing::new(g, vals)?))
        }
        r => Err(Error::Parse(format!("unsupported bundle rank {r}"))),
    }
}

pub fn canonical_form_to_json<T>(form: &CanonicalBundleForm<T>, value: impl Fn(&T) -> Value) -> Value {
    json!({
        "tree": form.tree_edges,
        "tuple": form.tuple.iter().map(value).collect::<Vec<_>>(),
    })
}

/// `{"genus", "meridians": [...], "longitudes": [...]}`.
pub fn rep_to_json(rho: &Representation) -> Value {
    json!({
        "genus": rho.genus,
        "meridians": rho.meridians.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "longitudes": rho.longitudes.iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn rep_from_json(v: &Value) -> Result<Representation> {
    let list = |key: &str| -> Result<Vec<Mat2>> {
        v.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("representation needs a {key:?} array")))?
            .iter()
            .map(matrix_from_json)
            .collect()
    };
    let rho = Representation::new(list("meridians")?, list("longitudes")?)?;
    if let Some(g) = v.get("genus") {
        if g.as_u64() != Some(rho.genus as u64) {
            return Err(Error::DimensionMismatch(format!("genus {g} with {} meridians", rho.genus)));
        }
    }
    Ok(rho)
}

/// The three graphs of a nest side by side, each with its flag edge drawn bold.
pub fn nest_to_dot(nest: &Nest) -> String {
    let mut out = String::from("graph nest {\n");
    for (i, f) in nest.flags.iter().enumerate() {
        out.push_str(&format!("  subgraph cluster_{i} {{\n    label=\"member {i}\";\n"));
        for v in 0..f.graph.n_vertices() {
            out.push_str(&format!("    n{i}_{v} [label=\"{v}\"];\n"));
        }
        for (e, (a, b)) in f.graph.edges().enumerate() {
            let style = if e == f.edge { ", penwidth=3" } else { "" };
            out.push_str(&format!("    n{i}_{a} -- n{i}_{b} [label=\"e{e}\"{style}];\n"));
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// Graph classes (boxes) against nest components (circles); each component
/// is joined to the graphs of its nest, with multiplicity.
pub fn incidence_to_dot(report: &CountingReport) -> String {
    let mut out = format!("graph incidence_genus_{} {{\n", report.genus);
    for p in 0..report.classes.graphs {
        out.push_str(&format!("  p{p} [shape=box, label=\"graph {p}\"];\n"));
    }
    for (c, nest) in report.nests.iter().enumerate() {
        out.push_str(&format!("  c{c} [shape=circle, label=\"C{c}\"];\n"));
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in nest {
            *mult.entry(p).or_default() += 1;
        }
        for (p, m) in mult {
            out.push_str(&format!("  c{c} -- p{p} [label=\"{m}\"];\n"));
        }
    }
    out.push_str("}\n");
    out
}

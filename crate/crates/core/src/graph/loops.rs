//! Combinatorial paths and loops made of oriented edges.
//!
//! An oriented edge is a half-edge `h`, traversed from `vertex_of(h)` to
//! `vertex_of(partner(h))`.

use super::{edge_of, partner, TrivalentGraph};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinatorialLoop {
    pub base: usize,
    pub steps: Vec<usize>,
    graph: Vec<usize>,
}

impl CombinatorialLoop {
    /// Validates chaining `v_t(step_i) = v_s(step_{i+1})` and closure at `base`.
    pub fn new(g: &TrivalentGraph, base: usize, steps: Vec<usize>) -> Result<Self> {
        let mut at = base;
        for &h in &steps {
            if h >= g.n_half_edges() || g.vertex_of(h) != at {
                return Err(Error::Parse(format!("oriented edge {h} does not start at vertex {at}")));
            }
            at = g.vertex_of(partner(h));
        }
        if at != base {
            return Err(Error::Parse("path does not close up".into()));
        }
        Ok(CombinatorialLoop { base, steps, graph: g.fingerprint() })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub(crate) fn graph_fingerprint(&self) -> &[usize] {
        &self.graph
    }

    /// No two cyclically consecutive steps use the same edge. A single step
    /// (a loop edge) is irreducible.
    pub fn is_irreducible(&self) -> bool {
        let d = self.steps.len();
        if d <= 1 {
            return true;
        }
        (0..d).all(|i| edge_of(self.steps[i]) != edge_of(self.steps[(i + 1) % d]))
    }

    /// Concatenation with immediate backtracks `h, partner(h)` cancelled.
    pub fn compose(&self, other: &CombinatorialLoop) -> Result<CombinatorialLoop> {
        if self.base != other.base || self.graph != other.graph {
            return Err(Error::MismatchedGraph);
        }
        let mut out: Vec<usize> = Vec::with_capacity(self.len() + other.len());
        for &h in self.steps.iter().chain(&other.steps) {
            if out.last() == Some(&partner(h)) {
                out.pop();
            } else {
                out.push(h);
            }
        }
        Ok(CombinatorialLoop { base: self.base, steps: out, graph: self.graph.clone() })
    }
}

/// All irreducible loops of length exactly `d` based at `v`.
pub fn irreducible_loops(g: &TrivalentGraph, v: usize, d: usize) -> Vec<CombinatorialLoop> {
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(d);
    extend(g, v, v, d, &mut path, &mut out);
    out
}

fn extend(
    g: &TrivalentGraph,
    base: usize,
    at: usize,
    d: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<CombinatorialLoop>,
) {
    if path.len() == d {
        if at == base {
            let lp = CombinatorialLoop { base, steps: path.clone(), graph: g.fingerprint() };
            if lp.is_irreducible() {
                out.push(lp);
            }
        }
        return;
    }
    for h in g.star(at) {
        if path.last().is_some_and(|&p| edge_of(p) == edge_of(h)) {
            continue;
        }
        path.push(h);
        extend(g, base, g.vertex_of(partner(h)), d, path, out);
        path.pop();
    }
}

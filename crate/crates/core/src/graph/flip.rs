//! Flags, the three-way flip that produces nests, and genus reduction.

use super::canon::canonical_form;
use super::cuts::is_bridge;
use super::{edge_of, multi_edge_symmetry, partner, TrivalentGraph};
use crate::error::{Error, Result};

/// A graph with a distinguished edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub graph: TrivalentGraph,
    pub edge: usize,
}

/// Canonical code of a flag up to flagged isomorphism.
pub type FlagLabel = Vec<u8>;

const MARK: u8 = 4;

impl Flag {
    pub fn new(graph: TrivalentGraph, edge: usize) -> Result<Self> {
        graph.check_edge(edge)?;
        Ok(Flag { graph, edge })
    }

    pub fn is_loop(&self) -> bool {
        self.graph.is_loop(self.edge)
    }

    fn marked_weights(&self) -> Vec<Vec<u8>> {
        let mut w = self.graph.weights();
        let (a, b) = self.graph.ends(self.edge);
        w[a][b] += MARK;
        if a != b {
            w[b][a] += MARK;
        }
        w
    }

    /// Canonical code; two flags share it iff some graph isomorphism carries
    /// one distinguished edge onto the other.
    pub fn label(&self) -> FlagLabel {
        canonical_form(&self.marked_weights()).key
    }

    /// Order of the stabilizer of the distinguished edge in the half-edge
    /// automorphism group.
    pub fn automorphism_count(&self) -> u64 {
        let c = canonical_form(&self.marked_weights());
        let (a, b) = self.graph.ends(self.edge);
        c.automorphisms * multi_edge_symmetry(&self.graph.weights(), Some((a.min(b), a.max(b))))
    }

    /// The same flag with the graph in canonical form, the distinguished edge
    /// placed deterministically.
    pub fn canonical(&self) -> Flag {
        let c = canonical_form(&self.marked_weights());
        let mut pos = vec![0; c.order.len()];
        for (i, &v) in c.order.iter().enumerate() {
            pos[v] = i;
        }
        let (ma, mb) = self.graph.ends(self.edge);
        let marked = (pos[ma].min(pos[mb]), pos[ma].max(pos[mb]));
        let mut edges: Vec<(usize, usize)> = self
            .graph
            .edges()
            .map(|(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
            .collect();
        edges.sort_unstable();
        let edge = edges.iter().position(|&e| e == marked).expect("marked edge survives");
        Flag { graph: TrivalentGraph::from_edges(&edges).expect("valid"), edge }
    }
}

/// The three flags obtained by contracting an edge to a 4-valent vertex and
/// re-expanding along each pair-partition of its four half-edges.
#[derive(Clone, Debug)]
pub struct Nest {
    pub flags: [Flag; 3],
}

impl Nest {
    /// Sorted flag labels; equal for nests that agree up to flagged
    /// isomorphism of each member.
    pub fn signature(&self) -> [FlagLabel; 3] {
        let mut s = self.flags.clone().map(|f| f.label());
        s.sort();
        s
    }
}

/// Flip along a flag. The first member is always the input flag (the
/// original partition). A loop flag yields three copies of itself.
pub fn flip(f: &Flag) -> Nest {
    if f.is_loop() {
        return Nest { flags: [f.clone(), f.clone(), f.clone()] };
    }
    let g = &f.graph;
    let (hs, ht) = (2 * f.edge, 2 * f.edge + 1);
    let (v, w) = (g.vertex_of(hs), g.vertex_of(ht));
    let others = |x: usize, skip: usize| -> [usize; 2] {
        let s = g.star(x);
        let rest: Vec<usize> = s.into_iter().filter(|&h| h != skip).collect();
        [rest[0], rest[1]]
    };
    let [a1, a2] = others(v, hs);
    let [b1, b2] = others(w, ht);
    let partitions = [[a1, a2, b1, b2], [a1, b2, a2, b1], [a1, b1, a2, b2]];
    let flags = partitions.map(|[p, q, r, s]| {
        let mut vertex_of: Vec<usize> = (0..g.n_half_edges()).map(|h| g.vertex_of(h)).collect();
        vertex_of[p] = v;
        vertex_of[q] = v;
        vertex_of[r] = w;
        vertex_of[s] = w;
        let graph = TrivalentGraph::from_half_edges(vertex_of, g.n_vertices())
            .expect("re-expansion of a connected contraction is a valid graph");
        Flag { graph, edge: f.edge }
    });
    Nest { flags }
}

/// Output of genus reduction: the smaller graph and the unordered pair of
/// (possibly equal) edges the deleted edge's endpoints were smoothed into.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub graph: TrivalentGraph,
    pub marked: (usize, usize),
}

/// Deletes the flag's edge and smooths the two 2-valent endpoints.
pub fn reduce_genus(f: &Flag) -> Result<Reduction> {
    let g = &f.graph;
    let e = f.edge;
    if g.is_loop(e) {
        return Err(Error::DegenerateReduction { edge: e, reason: "loop removal leaves a 1-valent vertex" });
    }
    if is_bridge(g, e) {
        return Err(Error::DisconnectedReduction { edge: e });
    }
    if g.genus() < 3 {
        return Err(Error::DegenerateReduction { edge: e, reason: "result would have genus below 2" });
    }
    let (v, w) = g.ends(e);
    let removed = |x: usize| x == v || x == w;
    let kept: Vec<usize> = (0..g.n_vertices()).filter(|&x| !removed(x)).collect();
    let mut new_index = vec![usize::MAX; g.n_vertices()];
    for (i, &x) in kept.iter().enumerate() {
        new_index[x] = i;
    }

    // Each new edge is a maximal path whose interior vertices are v or w.
    let mut member = vec![usize::MAX; g.n_edges()];
    let mut edges = Vec::new();
    for h in 0..g.n_half_edges() {
        if removed(g.vertex_of(h)) || member[edge_of(h)] != usize::MAX {
            continue;
        }
        let id = edges.len();
        let mut k = h;
        loop {
            member[edge_of(k)] = id;
            let p = partner(k);
            let x = g.vertex_of(p);
            if !removed(x) {
                edges.push((new_index[g.vertex_of(h)], new_index[x]));
                break;
            }
            k = g.star(x).into_iter().find(|&j| j != p && edge_of(j) != e).expect("trivalent");
        }
    }
    if (0..g.n_edges()).any(|f| f != e && member[f] == usize::MAX) {
        return Err(Error::DegenerateReduction { edge: e, reason: "vertex-free circle" });
    }
    let through = |x: usize| {
        let h = g.star(x).into_iter().find(|&k| edge_of(k) != e).expect("trivalent");
        member[edge_of(h)]
    };
    let (mv, mw) = (through(v), through(w));
    let graph = TrivalentGraph::from_edges(&edges)?;
    Ok(Reduction { graph, marked: (mv.min(mw), mv.max(mw)) })
}

/// Subdivides edges `a` and `b` (twice along one edge when equal) and joins
/// the two new vertices by a new edge; inverse of [`reduce_genus`].
pub fn insert_edge(g: &TrivalentGraph, a: usize, b: usize) -> Result<Flag> {
    g.check_edge(a)?;
    g.check_edge(b)?;
    let n = g.n_vertices();
    let (x, y) = (n, n + 1);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(g.n_edges() + 3);
    for (e, (s, t)) in g.edges().enumerate() {
        if e == a && e == b {
            edges.extend([(s, x), (x, y), (y, t)]);
        } else if e == a {
            edges.extend([(s, x), (x, t)]);
        } else if e == b {
            edges.extend([(s, y), (y, t)]);
        } else {
            edges.push((s, t));
        }
    }
    edges.push((x, y));
    let edge = edges.len() - 1;
    Ok(Flag { graph: TrivalentGraph::from_edges(&edges)?, edge })
}

/// Subdivides edge `a` at a new vertex carrying a bridge to a new looped
/// vertex. Raises the genus by one; needed alongside [`insert_edge`] to reach
/// graphs whose edges are all loops or bridges.
pub fn attach_loop(g: &TrivalentGraph, a: usize) -> Result<TrivalentGraph> {
    g.check_edge(a)?;
    let n = g.n_vertices();
    let (x, y) = (n, n + 1);
    let mut edges = Vec::with_capacity(g.n_edges() + 3);
    for (e, (s, t)) in g.edges().enumerate() {
        if e == a {
            edges.extend([(s, x), (x, t)]);
        } else {
            edges.push((s, t));
        }
    }
    edges.extend([(x, y), (y, y)]);
    TrivalentGraph::from_edges(&edges)
}

/// All flags of a graph, one per edge.
pub fn flags_of(g: &TrivalentGraph) -> Vec<Flag> {
    (0..g.n_edges()).map(|e| Flag { graph: g.clone(), edge: e }).collect()
}

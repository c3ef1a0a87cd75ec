//! Trivalent multigraphs in half-edge form.
//!
//! Edge `k` owns half-edges `2k` and `2k + 1`; the involution is `h ↦ h ^ 1`
//! and the orientation `2k → 2k + 1` is the edge's reference direction. A
//! graph is a map from half-edges to vertices. Loops and parallel edges are
//! ordinary edges.

pub mod canon;
pub mod counting;
pub mod cuts;
pub mod enumerate;
pub mod flip;
pub mod loops;

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use canon::Canonical;

#[derive(Clone)]
pub struct TrivalentGraph {
    vertex_of: Vec<usize>,
    stars: Vec<[usize; 3]>,
    canon: OnceLock<Canonical>,
}

/// Half-edge partner under the edge involution.
#[inline]
pub fn partner(h: usize) -> usize {
    h ^ 1
}

#[inline]
pub fn edge_of(h: usize) -> usize {
    h / 2
}

impl TrivalentGraph {
    /// Builds a graph from unordered vertex pairs; edge `k` is `edges[k]`.
    /// Vertices are `0..=max id`; every one of them must have degree 3.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let vertex_of: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        let n = vertex_of.iter().max().map_or(0, |m| m + 1);
        Self::from_half_edges(vertex_of, n)
    }

    pub(crate) fn from_half_edges(vertex_of: Vec<usize>, n_vertices: usize) -> Result<Self> {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n_vertices];
        for (h, &v) in vertex_of.iter().enumerate() {
            incident[v].push(h);
        }
        let mut stars = Vec::with_capacity(n_vertices);
        for (v, hs) in incident.iter().enumerate() {
            if hs.len() != 3 {
                return Err(Error::NonTrivalentVertex { vertex: v, degree: hs.len() });
            }
            stars.push([hs[0], hs[1], hs[2]]);
        }
        let g = TrivalentGraph { vertex_of, stars, canon: OnceLock::new() };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        if g.n_edges() + 1 < g.n_vertices() + 2 {
            return Err(Error::GenusTooSmall { genus: g.n_edges() + 1 - g.n_vertices() });
        }
        Ok(g)
    }

    pub fn n_vertices(&self) -> usize {
        self.stars.len()
    }

    pub fn n_edges(&self) -> usize {
        self.vertex_of.len() / 2
    }

    pub fn n_half_edges(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn genus(&self) -> usize {
        self.n_edges() + 1 - self.n_vertices()
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    /// Half-edges at `v` in increasing id order.
    pub fn star(&self, v: usize) -> [usize; 3] {
        self.stars[v]
    }

    /// Reference endpoints `(source, target)` of edge `e`.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        (self.vertex_of[2 * e], self.vertex_of[2 * e + 1])
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (a, b) = self.ends(e);
        a == b
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_edges()).map(|e| self.ends(e))
    }

    pub fn loop_edges(&self) -> Vec<usize> {
        (0..self.n_edges()).filter(|&e| self.is_loop(e)).collect()
    }

    pub fn check_edge(&self, e: usize) -> Result<()> {
        if e < self.n_edges() {
            Ok(())
        } else {
            Err(Error::NoSuchEdge(e))
        }
    }

    fn is_connected(&self) -> bool {
        self.reachable_without(None).iter().all(|&r| r)
    }

    /// Vertices reachable from vertex 0 when `skip` edges are deleted.
    pub(crate) fn reachable_without(&self, skip: Option<&[usize]>) -> Vec<bool> {
        let n = self.n_vertices();
        let mut seen = vec![false; n];
        if n == 0 {
            return seen;
        }
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for h in self.stars[v] {
                if skip.is_some_and(|s| s.contains(&edge_of(h))) {
                    continue;
                }
                let w = self.vertex_of[partner(h)];
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Symmetric edge-multiplicity matrix; loops sit on the diagonal.
    pub fn weights(&self) -> Vec<Vec<u8>> {
        let n = self.n_vertices();
        let mut w = vec![vec![0u8; n]; n];
        for (a, b) in self.edges() {
            w[a][b] += 1;
            if a != b {
                w[b][a] += 1;
            }
        }
        w
    }

    /// Canonical labeling, computed once per graph value.
    pub fn canonical(&self) -> &Canonical {
        self.canon.get_or_init(|| canon::canonical_form(&self.weights()))
    }

    pub fn canonical_key(&self) -> &[u8] {
        &self.canonical().key
    }

    pub fn is_isomorphic(&self, other: &TrivalentGraph) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    /// Order of the automorphism group acting on half-edges: vertex
    /// symmetries, permutations of parallel edges and loop reversals.
    pub fn automorphism_count(&self) -> u64 {
        self.canonical().automorphisms * multi_edge_symmetry(&self.weights(), None)
    }

    /// The isomorphic graph in canonical vertex order with sorted edges.
    pub fn canonical_graph(&self) -> TrivalentGraph {
        let order = &self.canonical().order;
        let mut pos = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges()
            .map(|(a, b)| {
                let (a, b) = (pos[a], pos[b]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        TrivalentGraph::from_edges(&edges).expect("relabeling preserves validity")
    }

    /// Breadth-first spanning tree from vertex 0; each vertex's half-edges
    /// are scanned in edge-id order.
    pub fn spanning_tree(&self) -> SpanningTree {
        let n = self.n_vertices();
        let mut parent_edge = vec![None; n];
        let mut depth = vec![0usize; n];
        let mut seen = vec![false; n];
        let mut in_tree = vec![false; self.n_edges()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for h in self.stars[v] {
                let w = self.vertex_of[partner(h)];
                if !seen[w] {
                    seen[w] = true;
                    parent_edge[w] = Some(edge_of(h));
                    depth[w] = depth[v] + 1;
                    in_tree[edge_of(h)] = true;
                    queue.push_back(w);
                }
            }
        }
        let tree_edges = (0..self.n_edges()).filter(|&e| in_tree[e]).collect();
        let non_tree_edges = (0..self.n_edges()).filter(|&e| !in_tree[e]).collect();
        SpanningTree { tree_edges, non_tree_edges, parent_edge, depth }
    }

    /// Short structural fingerprint used to check that derived objects refer
    /// to the same labeled graph.
    pub fn fingerprint(&self) -> Vec<usize> {
        self.vertex_of.clone()
    }
}

/// `∏ m!` over parallel classes of multiplicity `m` (excluding the marked
/// edge from its class when given) times `2` per loop.
pub(crate) fn multi_edge_symmetry(w: &[Vec<u8>], marked: Option<(usize, usize)>) -> u64 {
    let fact = |m: u64| (1..=m).product::<u64>();
    let mut total = 1u64;
    for (a, row) in w.iter().enumerate() {
        for (b, &weight) in row.iter().enumerate().skip(a) {
            let mut m = weight as u64;
            if marked == Some((a, b)) {
                m -= 1;
            }
            total *= fact(m);
            if a == b {
                total *= 1 << weight;
            }
        }
    }
    total
}

impl PartialEq for TrivalentGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_of == other.vertex_of
    }
}

impl Eq for TrivalentGraph {}

impl fmt::Debug for TrivalentGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrivalentGraph")
            .field("genus", &self.genus())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub tree_edges: Vec<usize>,
    /// Non-tree edges in increasing id order; the `j`-th one pairs with the
    /// `j`-th meridian and the `j`-th gluing coordinate.
    pub non_tree_edges: Vec<usize>,
    pub parent_edge: Vec<Option<usize>>,
    pub depth: Vec<usize>,
}

impl SpanningTree {
    pub fn contains(&self, e: usize) -> bool {
        self.tree_edges.binary_search(&e).is_ok()
    }

    /// Position of a non-tree edge among the non-tree edges.
    pub fn cycle_index(&self, e: usize) -> Option<usize> {
        self.non_tree_edges.binary_search(&e).ok()
    }
}

/// On-disk graph record: `{"vertices": [...], "edges": [{"id", "ends"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<i64>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: usize,
    pub ends: [i64; 2],
}

impl GraphFile {
    pub fn from_graph(g: &TrivalentGraph) -> Self {
        GraphFile {
            vertices: (0..g.n_vertices() as i64).collect(),
            edges: g
                .edges()
                .enumerate()
                .map(|(id, (a, b))| EdgeRecord { id, ends: [a as i64, b as i64] })
                .collect(),
        }
    }

    /// Vertex ids are positions in `vertices`; edge ids must be `0..|E|`.
    pub fn to_graph(&self) -> Result<TrivalentGraph> {
        let index = |v: i64| {
            self.vertices
                .iter()
                .position(|&u| u == v)
                .ok_or_else(|| Error::Parse(format!("edge endpoint {v} is not a listed vertex")))
        };
        let mut records = self.edges.clone();
        records.sort_by_key(|r| r.id);
        if records.iter().enumerate().any(|(i, r)| r.id != i) {
            return Err(Error::Parse("edge ids must be 0..|E| without gaps".into()));
        }
        let mut edges = Vec::with_capacity(records.len());
        for r in &records {
            edges.push((index(r.ends[0])?, index(r.ends[1])?));
        }
        let g = TrivalentGraph::from_edges(&edges)?;
        if g.n_vertices() != self.vertices.len() {
            let isolated = (0..self.vertices.len())
                .find(|&v| v >= g.n_vertices())
                .unwrap_or(g.n_vertices());
            return Err(Error::NonTrivalentVertex { vertex: isolated, degree: 0 });
        }
        Ok(g)
    }
}

/// DOT rendering with edge ids as labels.
pub fn to_dot(g: &TrivalentGraph, name: &str, highlight: Option<usize>) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in 0..g.n_vertices() {
        out.push_str(&format!("  v{v} [label=\"{v}\"];\n"));
    }
    for (e, (a, b)) in g.edges().enumerate() {
        let style = if highlight == Some(e) { ", penwidth=3" } else { "" };
        out.push_str(&format!("  v{a} -- v{b} [label=\"e{e}\"{style}];\n"));
    }
    out.push_str("}\n");
    out
}

/// Named genus-2 and genus-3 graphs used throughout tests and docs.
pub mod named {
    use super::TrivalentGraph;

    pub fn theta() -> TrivalentGraph {
        TrivalentGraph::from_edges(&[(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    /// Two loops joined by a bridge; the bridge is edge 1.
    pub fn dumbbell() -> TrivalentGraph {
        TrivalentGraph::from_edges(&[(0, 0), (0, 1), (1, 1)]).unwrap()
    }

    pub fn k4() -> TrivalentGraph {
        TrivalentGraph::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn named_graphs_have_expected_genus() {
        assert_eq!(theta().genus(), 2);
        assert_eq!(dumbbell().genus(), 2);
        assert_eq!(k4().genus(), 3);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            TrivalentGraph::from_edges(&[(0, 1)]),
            Err(Error::NonTrivalentVertex { vertex: 0, degree: 1 })
        );
        assert_eq!(
            TrivalentGraph::from_edges(&[(0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)]),
            Err(Error::Disconnected)
        );
        assert_eq!(TrivalentGraph::from_edges(&[]), Err(Error::EmptyGraph));
    }

    #[test]
    fn stable_half_edge_ids() {
        let g = dumbbell();
        assert_eq!(g.vertex_of(2), 0);
        assert_eq!(g.vertex_of(3), 1);
        assert_eq!(g.star(0), [0, 1, 2]);
    }

    #[test]
    fn spanning_tree_of_theta() {
        let t = theta().spanning_tree();
        assert_eq!(t.tree_edges, vec![0]);
        assert_eq!(t.non_tree_edges, vec![1, 2]);
    }

    #[test]
    fn automorphisms_of_small_graphs() {
        assert_eq!(theta().automorphism_count(), 12);
        assert_eq!(dumbbell().automorphism_count(), 8);
        assert_eq!(k4().automorphism_count(), 24);
    }

    #[test]
    fn graph_file_round_trip_and_relabeling() {
        let file = GraphFile {
            vertices: vec![10, 20],
            edges: vec![
                EdgeRecord { id: 1, ends: [10, 20] },
                EdgeRecord { id: 0, ends: [10, 10] },
                EdgeRecord { id: 2, ends: [20, 20] },
            ],
        };
        let g = file.to_graph().unwrap();
        assert!(g.is_isomorphic(&dumbbell()));
        let back = GraphFile::from_graph(&g).to_graph().unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn canonical_graph_is_a_fixed_point() {
        let g = TrivalentGraph::from_edges(&[(2, 3), (0, 1), (0, 2), (1, 3), (0, 3), (1, 2)]).unwrap();
        let c = g.canonical_graph();
        assert_eq!(c.canonical_graph(), c);
        assert!(c.is_isomorphic(&k4()));
    }
}

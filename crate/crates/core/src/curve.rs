//! The stable curve attached to a trivalent graph, its one-edge smoothings,
//! and spaces of (bi)canonical sections in residue coordinates.
//!
//! Half-edges are the marked points and edges are the nodes: the node of edge
//! `k` glues points `2k` and `2k + 1`. A section of K on the curve is recorded
//! by its residue at every marked point; a section of 2K on a trivalent curve
//! by its biresidue at every marked point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{q, Q};
use crate::graph::cuts::thickness;
use crate::graph::flip::{flip, Flag};
use crate::graph::{edge_of, TrivalentGraph};
use crate::linalg::{rank_of, Matrix};
use num::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Rational,
    /// A smooth genus-one component, left by smoothing a loop node.
    Elliptic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub kind: ComponentKind,
    pub points: Vec<usize>,
}

impl Component {
    pub fn valence(&self) -> usize {
        self.points.len()
    }

    fn genus(&self) -> usize {
        match self.kind {
            ComponentKind::Rational => 0,
            ComponentKind::Elliptic => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedCurve {
    components: Vec<Component>,
    component_of: Vec<usize>,
}

impl MarkedCurve {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        let n: usize = components.iter().map(Component::valence).sum();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::InvalidCurve(format!("{n} marked points cannot be paired into nodes")));
        }
        let mut component_of = vec![usize::MAX; n];
        for (c, comp) in components.iter().enumerate() {
            let ok = match comp.kind {
                ComponentKind::Rational => matches!(comp.valence(), 3 | 4),
                ComponentKind::Elliptic => comp.valence() >= 1,
            };
            if !ok {
                return Err(Error::InvalidCurve(format!(
                    "{:?} component {c} has {} marked points",
                    comp.kind,
                    comp.valence()
                )));
            }
            for &h in &comp.points {
                if h >= n || component_of[h] != usize::MAX {
                    return Err(Error::InvalidCurve(format!("marked point {h} is out of range or repeated")));
                }
                component_of[h] = c;
            }
        }
        Ok(MarkedCurve { components, component_of })
    }

    /// One rational component per vertex, marked by its half-edges.
    pub fn of_graph(g: &TrivalentGraph) -> Self {
        let components = (0..g.n_vertices())
            .map(|v| Component { kind: ComponentKind::Rational, points: g.star(v).to_vec() })
            .collect();
        MarkedCurve::new(components).expect("a trivalent graph gives a valid curve")
    }

    /// Smooth the node of edge `e`. A non-loop edge merges its two end
    /// components into one with four marked points; a loop edge turns its
    /// component into an elliptic one. Remaining edges keep their order.
    pub fn merged(g: &TrivalentGraph, e: usize) -> Result<Self> {
        g.check_edge(e)?;
        let relabel = |h: usize| {
            let k = edge_of(h);
            2 * (if k > e { k - 1 } else { k }) + h % 2
        };
        let (s, t) = g.ends(e);
        let mut components = Vec::new();
        for v in 0..g.n_vertices() {
            if v == t && t != s {
                continue;
            }
            let mut points: Vec<usize> = g.star(v).into_iter().filter(|&h| edge_of(h) != e).collect();
            let kind = if v == s && s == t {
                ComponentKind::Elliptic
            } else {
                if v == s {
                    points.extend(g.star(t).into_iter().filter(|&h| edge_of(h) != e));
                }
                ComponentKind::Rational
            };
            components.push(Component { kind, points: points.into_iter().map(relabel).collect() });
        }
        MarkedCurve::new(components)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn n_points(&self) -> usize {
        self.component_of.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.n_points() / 2
    }

    pub fn component_of(&self, h: usize) -> usize {
        self.component_of[h]
    }

    pub fn arithmetic_genus(&self) -> usize {
        let geometric: usize = self.components.iter().map(Component::genus).sum();
        self.n_nodes() + 1 + geometric - self.components.len()
    }

    pub fn is_trivalent(&self) -> bool {
        self.components.iter().all(|c| c.kind == ComponentKind::Rational && c.valence() == 3)
    }

    /// Degree of K on each component: `valence − 2 + 2·genus`.
    pub fn multidegree(&self) -> Vec<i64> {
        self.components.iter().map(|c| c.valence() as i64 - 2 + 2 * c.genus() as i64).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Constraint {
    /// Opposite residues at the two branches of a node.
    Node(usize),
    /// Residue theorem on a component.
    Component(usize),
}

/// A finite linear system whose solutions are the sections.
#[derive(Clone, Debug)]
pub struct ResidueSystem {
    n_variables: usize,
    constraints: Vec<Constraint>,
    matrix: Matrix<Q>,
    basis: Vec<Vec<Q>>,
}

impl ResidueSystem {
    fn solve(n_variables: usize, rows: Vec<(Constraint, Vec<Q>)>) -> Self {
        let (constraints, rows): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        let matrix = Matrix::from_rows(n_variables, rows);
        let basis = matrix.nullspace();
        ResidueSystem { n_variables, constraints, matrix, basis }
    }

    pub fn n_variables(&self) -> usize {
        self.n_variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn matrix(&self) -> &Matrix<Q> {
        &self.matrix
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.n_variables - self.basis.len()
    }

    pub fn satisfies(&self, v: &[Q]) -> bool {
        v.len() == self.n_variables && self.matrix.apply(v).iter().all(Zero::is_zero)
    }

    /// Rank of the coordinate functionals `columns` restricted to the
    /// solution space.
    pub fn functional_rank(&self, columns: &[usize]) -> usize {
        let rows: Vec<Vec<Q>> = columns.iter().map(|&c| self.basis.iter().map(|b| b[c].clone()).collect()).collect();
        rank_of(&rows)
    }

    fn vanishes(&self, column: usize) -> bool {
        self.basis.iter().all(|b| b[column].is_zero())
    }
}

fn node_rows(n_variables: usize, n_nodes: usize) -> Vec<(Constraint, Vec<Q>)> {
    (0..n_nodes)
        .map(|k| {
            let mut row = vec![q(0); n_variables];
            row[2 * k] = q(1);
            row[2 * k + 1] = q(1);
            (Constraint::Node(k), row)
        })
        .collect()
}

/// Residues `x_h` per marked point, plus one coordinate per elliptic
/// component for its holomorphic differential.
pub fn canonical_space(c: &MarkedCurve) -> ResidueSystem {
    let n = c.n_points() + c.components.iter().filter(|k| k.kind == ComponentKind::Elliptic).count();
    let mut rows = node_rows(n, c.n_nodes());
    for (i, comp) in c.components.iter().enumerate() {
        let mut row = vec![q(0); n];
        for &h in &comp.points {
            row[h] = q(1);
        }
        rows.push((Constraint::Component(i), row));
    }
    ResidueSystem::solve(n, rows)
}

/// Biresidues `y_h` per marked point. Only trivalent curves: on a component
/// with four points a quadratic differential is not fixed by its biresidues.
pub fn bicanonical_space(c: &MarkedCurve) -> Result<ResidueSystem> {
    if !c.is_trivalent() {
        return Err(Error::NotTrivalent);
    }
    let n = c.n_points();
    Ok(ResidueSystem::solve(n, node_rows(n, c.n_nodes())))
}

/// Rank of the biresidue functionals `y_{2k}`, one per node.
pub fn biresidue_rank(system: &ResidueSystem) -> usize {
    let cols: Vec<usize> = (0..system.n_variables() / 2).map(|k| 2 * k).collect();
    system.functional_rank(&cols)
}

/// Edges on which every canonical section has zero residue.
pub fn base_points(g: &TrivalentGraph) -> Vec<usize> {
    let system = canonical_space(&MarkedCurve::of_graph(g));
    (0..g.n_edges()).filter(|&e| system.vanishes(2 * e)).collect()
}

/// Whether the residue functionals of any two distinct edges are linearly
/// independent on the canonical sections.
pub fn separates_nodes(g: &TrivalentGraph) -> Result<bool> {
    let system = canonical_space(&MarkedCurve::of_graph(g));
    let base: Vec<usize> = (0..g.n_edges()).filter(|&e| system.vanishes(2 * e)).collect();
    if !base.is_empty() {
        return Err(Error::HasBasePoints(base));
    }
    let m = g.n_edges();
    Ok((0..m).all(|e| (e + 1..m).all(|f| system.functional_rank(&[2 * e, 2 * f]) == 2)))
}

#[derive(Clone, Debug)]
pub struct DeformationFamily {
    pub boundary: [MarkedCurve; 3],
    pub generic: MarkedCurve,
}

/// The one-parameter family smoothing the node of a flag: its three boundary
/// points are the curves of the flip nest.
pub fn deformation_family(f: &Flag) -> DeformationFamily {
    let nest = flip(f);
    DeformationFamily {
        boundary: nest.flags.map(|m| MarkedCurve::of_graph(&m.graph)),
        generic: MarkedCurve::merged(&f.graph, f.edge).expect("flag edge is valid"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub genus: usize,
    pub thickness: usize,
    #[serde(rename = "dim_K")]
    pub dim_k: usize,
    #[serde(rename = "dim_2K")]
    pub dim_2k: Option<usize>,
    pub base_points: Vec<usize>,
    pub multidegree: Vec<i64>,
}

/// Summary for the graph's curve, or for its smoothing at `merged`.
pub fn curve_report(g: &TrivalentGraph, merged: Option<usize>) -> Result<CurveReport> {
    let curve = match merged {
        Some(e) => MarkedCurve::merged(g, e)?,
        None => MarkedCurve::of_graph(g),
    };
    let canonical = canonical_space(&curve);
    let base_points = (0..curve.n_nodes()).filter(|&k| canonical.vanishes(2 * k)).collect();
    Ok(CurveReport {
        genus: curve.arithmetic_genus(),
        thickness: thickness(g),
        dim_k: canonical.dimension(),
        dim_2k: bicanonical_space(&curve).ok().map(|s| s.dimension()),
        base_points,
        multidegree: curve.multidegree(),
    })
}

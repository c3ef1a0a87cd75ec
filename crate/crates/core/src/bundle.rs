//! Line bundles and rank-2 bundles on the nodal curve of a graph, as edge
//! gluing data modulo vertex gauge.
//!
//! Gluing values are stored per edge in the reference direction `2k → 2k+1`;
//! the reverse direction carries the inverse.

use num::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{gq, q, q_frac, Gq, Q};
use crate::graph::TrivalentGraph;
use crate::linalg::Matrix;
use crate::mat2::{traceless, Mat2};

pub trait GaugeElement: Clone + PartialEq + std::fmt::Debug {
    fn one() -> Self;
    fn times(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    /// Reason the value is not a group element, if it is not.
    fn defect(&self) -> Option<&'static str>;
}

impl GaugeElement for Q {
    fn one() -> Self {
        <Q as One>::one()
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn defect(&self) -> Option<&'static str> {
        self.is_zero().then_some("scalar is zero")
    }
}

impl GaugeElement for Mat2 {
    fn one() -> Self {
        Mat2::identity()
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn defect(&self) -> Option<&'static str> {
        (self.det() != gq(1, 0)).then_some("determinant is not 1")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing<T> {
    values: Vec<T>,
    graph: Vec<usize>,
}

pub type ScalarGluing = Gluing<Q>;
pub type MatrixGluing = Gluing<Mat2>;

/// One element per vertex.
pub type GaugeTransform<T> = Vec<T>;

impl<T: GaugeElement> Gluing<T> {
    pub fn new(g: &TrivalentGraph, values: Vec<T>) -> Result<Self> {
        if values.len() != g.n_edges() {
            return Err(Error::DimensionMismatch(format!(
                "{} gluing values for {} edges",
                values.len(),
                g.n_edges()
            )));
        }
        for (edge, v) in values.iter().enumerate() {
            if let Some(reason) = v.defect() {
                return Err(Error::InvalidGluing { edge, reason });
            }
        }
        Ok(Gluing { values, graph: g.fingerprint() })
    }

    pub fn trivial(g: &TrivalentGraph) -> Self {
        Gluing { values: vec![T::one(); g.n_edges()], graph: g.fingerprint() }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Value along half-edge `h`, read from `vertex_of(h)` to the other end.
    pub fn along(&self, h: usize) -> T {
        let v = &self.values[h / 2];
        if h.is_multiple_of(2) {
            v.clone()
        } else {
            v.inv()
        }
    }

    pub fn lives_on(&self, g: &TrivalentGraph) -> bool {
        self.graph == g.fingerprint()
    }

    fn check(&self, g: &TrivalentGraph) -> Result<()> {
        if self.lives_on(g) {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }
}

/// `ã(e) = λ(v_s)·a(e)·λ(v_t)⁻¹`.
pub fn gauge_apply<T: GaugeElement>(g: &TrivalentGraph, a: &Gluing<T>, gauge: &[T]) -> Result<Gluing<T>> {
    a.check(g)?;
    if gauge.len() != g.n_vertices() {
        return Err(Error::DimensionMismatch(format!(
            "{} gauge values for {} vertices",
            gauge.len(),
            g.n_vertices()
        )));
    }
    let values = a
        .values
        .iter()
        .enumerate()
        .map(|(e, v)| {
            let (s, t) = g.ends(e);
            gauge[s].times(v).times(&gauge[t].inv())
        })
        .collect();
    Ok(Gluing { values, graph: a.graph.clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualSymmetry {
    None,
    SimultaneousConjugation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBundleForm<T> {
    pub tree_edges: Vec<usize>,
    /// Values on the non-tree edges, in edge-id order.
    pub tuple: Vec<T>,
    pub residual: ResidualSymmetry,
    /// The gauge (identity at vertex 0) that takes the gluing to this form.
    pub gauge: GaugeTransform<T>,
}

pub trait Residual {
    const RESIDUAL: ResidualSymmetry;
}

impl Residual for Q {
    const RESIDUAL: ResidualSymmetry = ResidualSymmetry::None;
}

impl Residual for Mat2 {
    const RESIDUAL: ResidualSymmetry = ResidualSymmetry::SimultaneousConjugation;
}

/// Gauge every tree edge to the identity, starting from the identity at
/// vertex 0, and read off the non-tree values.
pub fn canonical_form<T: GaugeElement + Residual>(g: &TrivalentGraph, a: &Gluing<T>) -> Result<CanonicalBundleForm<T>> {
    a.check(g)?;
    let tree = g.spanning_tree();
    let mut order: Vec<usize> = (0..g.n_vertices()).collect();
    order.sort_by_key(|&v| tree.depth[v]);
    let mut gauge: Vec<T> = vec![T::one(); g.n_vertices()];
    for v in order {
        if let Some(e) = tree.parent_edge[v] {
            let (s, t) = g.ends(e);
            let val = &a.values[e];
            gauge[v] = if t == v { gauge[s].times(val) } else { gauge[t].times(&val.inv()) };
        }
    }
    let normalized = gauge_apply(g, a, &gauge)?;
    Ok(CanonicalBundleForm {
        tuple: tree.non_tree_edges.iter().map(|&e| normalized.values[e].clone()).collect(),
        tree_edges: tree.tree_edges,
        residual: T::RESIDUAL,
        gauge,
    })
}

/// Identity on tree edges, the tuple on non-tree edges.
pub fn from_tuple<T: GaugeElement>(g: &TrivalentGraph, tuple: &[T]) -> Result<Gluing<T>> {
    let tree = g.spanning_tree();
    if tuple.len() != tree.non_tree_edges.len() {
        return Err(Error::DimensionMismatch(format!("tuple of {} for genus {}", tuple.len(), g.genus())));
    }
    let mut values = vec![T::one(); g.n_edges()];
    for (j, &e) in tree.non_tree_edges.iter().enumerate() {
        values[e] = tuple[j].clone();
    }
    Gluing::new(g, values)
}

pub fn line_equivalent(g: &TrivalentGraph, a: &ScalarGluing, b: &ScalarGluing) -> Result<bool> {
    Ok(canonical_form(g, a)?.tuple == canonical_form(g, b)?.tuple)
}

/// Dimension of the edge torus modulo the vertex torus, from the rank of the
/// signed incidence matrix.
pub fn abelian_moduli_dim(g: &TrivalentGraph) -> usize {
    let rows = (0..g.n_edges())
        .map(|e| {
            let (s, t) = g.ends(e);
            let mut row = vec![q(0); g.n_vertices()];
            row[s] += q(1);
            row[t] -= q(1);
            row
        })
        .collect();
    g.n_edges() - Matrix::from_rows(g.n_vertices(), rows).rank()
}

/// Whether the matrices have no common invariant line: the algebra they
/// generate is all of `M_2`.
pub fn is_irreducible(tuple: &[Mat2]) -> bool {
    let flat = |m: &Mat2| m.entries().to_vec();
    let mut span = vec![Mat2::identity()];
    let mut frontier = vec![Mat2::identity()];
    let mut rank = 1;
    while !frontier.is_empty() && rank < 4 {
        let mut next = Vec::new();
        for f in &frontier {
            for a in tuple {
                let p = f * a;
                let mut trial: Vec<Vec<Gq>> = span.iter().map(flat).collect();
                trial.push(flat(&p));
                let r = crate::linalg::rank_of(&trial);
                if r > rank {
                    rank = r;
                    span.push(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    rank == 4
}

fn trace_data(tuple: &[Mat2], depth: usize) -> Vec<Gq> {
    let n = tuple.len();
    let mut out: Vec<Gq> = tuple.iter().map(Mat2::trace).collect();
    for i in 0..n {
        for j in i + 1..n {
            let ij = &tuple[i] * &tuple[j];
            out.push(ij.trace());
            if depth >= 3 {
                for t in &tuple[j + 1..] {
                    out.push((&ij * t).trace());
                }
            }
        }
    }
    out
}

/// Equivalence of tuples up to simultaneous conjugation. Irreducible tuples
/// compare `tr A_i`, `tr A_iA_j`, `tr A_iA_jA_k`; reducible ones compare
/// their diagonal parts (up to swapping the two eigenvalue characters) via
/// `tr A_i` and `tr A_iA_j`.
pub fn tuples_equivalent(a: &[Mat2], b: &[Mat2]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    match (is_irreducible(a), is_irreducible(b)) {
        (true, true) => trace_data(a, 3) == trace_data(b, 3),
        (false, false) => trace_data(a, 2) == trace_data(b, 2),
        _ => false,
    }
}

pub fn sl2_equivalent(g: &TrivalentGraph, a: &MatrixGluing, b: &MatrixGluing) -> Result<bool> {
    Ok(tuples_equivalent(&canonical_form(g, a)?.tuple, &canonical_form(g, b)?.tuple))
}

/// Traceless `X_v` per vertex with `X_{v_s}·a(e) = a(e)·X_{v_t}` on every edge.
pub fn automorphism_dim(g: &TrivalentGraph, a: &MatrixGluing) -> Result<usize> {
    a.check(g)?;
    let n = 3 * g.n_vertices();
    let basis = traceless::basis();
    let mut rows = Vec::with_capacity(4 * g.n_edges());
    for (e, m) in a.values.iter().enumerate() {
        let (s, t) = g.ends(e);
        let mut block = vec![vec![Gq::zero(); n]; 4];
        for (k, b) in basis.iter().enumerate() {
            let left = (b * m).entries();
            let right = (m * b).entries();
            for r in 0..4 {
                block[r][3 * s + k] += &left[r];
                block[r][3 * t + k] -= &right[r];
            }
        }
        rows.extend(block);
    }
    Ok(n - Matrix::from_rows(n, rows).rank())
}

/// Traceless residues `R_h` per half-edge, summing to zero around each
/// vertex, matched across each edge by `R_{h_s} + a·R_{h_t}·a⁻¹ = 0`.
pub fn packet_dim(g: &TrivalentGraph, a: &MatrixGluing) -> Result<usize> {
    a.check(g)?;
    let n = 6 * g.n_vertices();
    // coordinates of R_h as signed sums of the two free residues at its vertex
    let residue = |h: usize| -> Vec<(usize, i64)> {
        let v = g.vertex_of(h);
        match g.star(v).iter().position(|&x| x == h).expect("h is in its star") {
            2 => vec![(6 * v, -1), (6 * v + 3, -1)],
            k => vec![(6 * v + 3 * k, 1)],
        }
    };
    let mut rows = Vec::with_capacity(3 * g.n_edges());
    for (e, m) in a.values.iter().enumerate() {
        let ad = traceless::adjoint(m);
        for r in 0..3 {
            let mut row = vec![Gq::zero(); n];
            for (base, sign) in residue(2 * e) {
                row[base + r] += gq(sign, 0);
            }
            for (base, sign) in residue(2 * e + 1) {
                for c in 0..3 {
                    row[base + c] += &ad[r][c] * gq(sign, 0);
                }
            }
            rows.push(row);
        }
    }
    Ok(n - Matrix::from_rows(n, rows).rank())
}

pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Q {
    let num = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    q_frac(num, rng.gen_range(1..=5))
}

pub fn random_scalar_gluing<R: Rng + ?Sized>(g: &TrivalentGraph, rng: &mut R) -> ScalarGluing {
    let values = (0..g.n_edges()).map(|_| random_scalar(rng)).collect();
    Gluing::new(g, values).expect("random scalars are nonzero")
}

pub fn random_matrix_gluing<R: Rng + ?Sized>(g: &TrivalentGraph, rng: &mut R, complex: bool) -> MatrixGluing {
    let values = (0..g.n_edges())
        .map(|_| {
            let steps = rng.gen_range(2..=5);
            Mat2::random_unimodular(rng, steps, complex)
        })
        .collect();
    Gluing::new(g, values).expect("random matrices are unimodular")
}

/// `diag(t, 1/t)` on every edge with random nonzero rational `t`.
pub fn random_diagonal_gluing<R: Rng + ?Sized>(g: &TrivalentGraph, rng: &mut R) -> MatrixGluing {
    let values = (0..g.n_edges()).map(|_| Mat2::diag(Gq::new(random_scalar(rng), Q::zero()))).collect();
    Gluing::new(g, values).expect("diagonal matrices are unimodular")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn scalars(g: &TrivalentGraph, v: &[i64]) -> ScalarGluing {
        Gluing::new(g, v.iter().map(|&x| q(x)).collect()).unwrap()
    }

    #[test]
    fn theta_gauge_example() {
        let g = theta();
        let a = scalars(&g, &[2, 3, 5]);
        let b = gauge_apply(&g, &a, &[q(1), q(2)]).unwrap();
        assert_eq!(b.values(), &[q(1), q_frac(3, 2), q_frac(5, 2)]);
        assert!(matches!(gauge_apply(&g, &a, &[q(1)]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn theta_canonical_tuple() {
        let g = theta();
        let c = canonical_form(&g, &scalars(&g, &[2, 3, 5])).unwrap();
        assert_eq!(c.tree_edges, vec![0]);
        assert_eq!(c.tuple, vec![q_frac(3, 2), q_frac(5, 2)]);
        assert_eq!(canonical_form(&g, &ScalarGluing::trivial(&g)).unwrap().tuple, vec![q(1), q(1)]);
    }

    #[test]
    fn line_equivalence() {
        let g = theta();
        let a = scalars(&g, &[2, 3, 5]);
        assert!(line_equivalent(&g, &a, &scalars(&g, &[4, 6, 10])).unwrap());
        assert!(!line_equivalent(&g, &a, &scalars(&g, &[2, 3, 7])).unwrap());
        let other = ScalarGluing::trivial(&k4());
        assert_eq!(line_equivalent(&g, &a, &other), Err(Error::GraphMismatch));
    }

    #[test]
    fn invalid_gluings() {
        let g = theta();
        assert_eq!(
            Gluing::new(&g, vec![q(1), q(0), q(1)]),
            Err(Error::InvalidGluing { edge: 1, reason: "scalar is zero" })
        );
        let bad = Mat2::from_ints(2, 0, 0, 1);
        assert!(matches!(
            Gluing::new(&g, vec![Mat2::identity(), Mat2::identity(), bad]),
            Err(Error::InvalidGluing { edge: 2, .. })
        ));
    }

    #[test]
    fn weyl_flip_is_equivalent() {
        let t = Gq::new(q(3), Q::zero());
        let a = [Mat2::diag(t.clone()), Mat2::diag(gq(2, 0))];
        let b = [Mat2::diag(t.inv()), Mat2::diag(gq(2, 0).inv())];
        assert!(tuples_equivalent(&a, &b));
        let c = [Mat2::diag(t.inv()), Mat2::diag(gq(2, 0))];
        assert!(!tuples_equivalent(&a, &c));
    }

    #[test]
    fn irreducibility() {
        let u = Mat2::from_ints(1, 1, 0, 1);
        let l = Mat2::from_ints(1, 0, 1, 1);
        assert!(is_irreducible(&[u.clone(), l]));
        assert!(!is_irreducible(&[u.clone(), u]));
        assert!(!is_irreducible(&[Mat2::identity()]));
    }

    #[test]
    fn automorphisms_and_packets() {
        let g = theta();
        let trivial = MatrixGluing::trivial(&g);
        assert_eq!(automorphism_dim(&g, &trivial).unwrap(), 3);
        assert_eq!(packet_dim(&g, &trivial).unwrap(), 6);
        let diag = from_tuple(&g, &[Mat2::diag(gq(2, 0)), Mat2::diag(gq(3, 0))]).unwrap();
        assert_eq!(automorphism_dim(&g, &diag).unwrap(), 1);
        let irr = from_tuple(&g, &[Mat2::from_ints(1, 1, 0, 1), Mat2::from_ints(1, 0, 1, 1)]).unwrap();
        assert_eq!(automorphism_dim(&g, &irr).unwrap(), 0);
        assert_eq!(packet_dim(&g, &irr).unwrap(), 3);
    }

    #[test]
    fn packet_identity_on_random_gluings() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for g in [theta(), dumbbell(), k4()] {
            for _ in 0..5 {
                let a = random_matrix_gluing(&g, &mut rng, true);
                let d = packet_dim(&g, &a).unwrap() - automorphism_dim(&g, &a).unwrap();
                assert_eq!(d, 3 * g.genus() - 3);
            }
        }
    }

    #[test]
    fn abelian_dimension() {
        for g in [theta(), dumbbell(), k4()] {
            assert_eq!(abelian_moduli_dim(&g), g.genus());
        }
    }

    #[test]
    fn rank_two_gauge_invariance() {
        let g = k4();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_matrix_gluing(&g, &mut rng, false);
        let gauge: Vec<Mat2> = (0..g.n_vertices()).map(|_| Mat2::random_unimodular(&mut rng, 3, true)).collect();
        let b = gauge_apply(&g, &a, &gauge).unwrap();
        assert!(sl2_equivalent(&g, &a, &b).unwrap());
        let ca = canonical_form(&g, &a).unwrap();
        let cb = canonical_form(&g, &b).unwrap();
        let p = &cb.gauge[0].inverse() * &gauge[0];
        assert!(ca.tuple.iter().zip(&cb.tuple).all(|(x, y)| &p.conjugate(x) == y));
    }
}

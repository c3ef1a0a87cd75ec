//! SL(2) representations of the surface group, conjugacy classes, gluing of
//! pants boundary data, and the Schottky section.
//!
//! Meridians carry the bundle data and generate the kernel side of the
//! projection to the graph's free group; the Schottky locus is where every
//! longitude acts trivially.

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bundle::{canonical_form, tuples_equivalent, CanonicalBundleForm, MatrixGluing, ResidualSymmetry};
use crate::error::{Error, Result};
use crate::field::{gq, sqrt_gq, Gq};
use crate::graph::TrivalentGraph;
use crate::mat2::{intertwiners, Mat2};
use crate::surface::{circle_words, CircleWords, Generator, Presentation, SurfaceWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub genus: usize,
    pub meridians: Vec<Mat2>,
    pub longitudes: Vec<Mat2>,
}

impl Representation {
    pub fn new(meridians: Vec<Mat2>, longitudes: Vec<Mat2>) -> Result<Self> {
        if meridians.len() != longitudes.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} meridians and {} longitudes",
                meridians.len(),
                longitudes.len()
            )));
        }
        if meridians.iter().chain(&longitudes).any(|m| m.det() != gq(1, 0)) {
            return Err(Error::NotUnimodular);
        }
        Ok(Representation { genus: meridians.len(), meridians, longitudes })
    }

    pub fn trivial(genus: usize) -> Self {
        Representation {
            genus,
            meridians: vec![Mat2::identity(); genus],
            longitudes: vec![Mat2::identity(); genus],
        }
    }

    pub fn image(&self, gen: Generator) -> Result<&Mat2> {
        let (list, i) = match gen {
            Generator::Meridian(i) => (&self.meridians, i),
            Generator::Longitude(i) => (&self.longitudes, i),
        };
        i.checked_sub(1).and_then(|k| list.get(k)).ok_or_else(|| {
            Error::UnknownGenerator(match gen {
                Generator::Meridian(i) => format!("m{i}"),
                Generator::Longitude(i) => format!("l{i}"),
            })
        })
    }

    /// `P ρ P⁻¹` on every generator.
    pub fn conjugate(&self, p: &Mat2) -> Self {
        Representation {
            genus: self.genus,
            meridians: self.meridians.iter().map(|m| p.conjugate(m)).collect(),
            longitudes: self.longitudes.iter().map(|m| p.conjugate(m)).collect(),
        }
    }
}

pub fn evaluate(rho: &Representation, w: &SurfaceWord) -> Result<Mat2> {
    let mut acc = Mat2::identity();
    for l in w.letters() {
        let m = rho.image(l.gen)?;
        acc = if l.inverse { &acc * &m.inverse() } else { &acc * m };
    }
    Ok(acc)
}

pub fn verify_relation(rho: &Representation) -> bool {
    let rel = Presentation { genus: rho.genus }.relation();
    evaluate(rho, &rel).map(|m| m.is_identity()).unwrap_or(false)
}

/// Entry `(i, j)` (1-based) of the image of `w`.
pub fn c_ij(rho: &Representation, w: &SurfaceWord, i: usize, j: usize) -> Result<Gq> {
    if !(1..=2).contains(&i) || !(1..=2).contains(&j) {
        return Err(Error::DimensionMismatch(format!("entry ({i}, {j}) of a 2×2 matrix")));
    }
    Ok(evaluate(rho, w)?.entry(i - 1, j - 1).clone())
}

pub fn on_schottky_locus(rho: &Representation) -> bool {
    rho.longitudes.iter().all(Mat2::is_identity)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjType {
    CentralPlus,
    CentralMinus,
    Semisimple,
    /// Trace ±2 but not central.
    Parabolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjClass {
    pub trace: Gq,
    pub kind: ConjType,
}

pub fn conj_class(m: &Mat2) -> Result<ConjClass> {
    if m.det() != gq(1, 0) {
        return Err(Error::NotUnimodular);
    }
    let trace = m.trace();
    let kind = if m.is_identity() {
        ConjType::CentralPlus
    } else if m.is_scalar() {
        ConjType::CentralMinus
    } else if trace == gq(2, 0) || trace == gq(-2, 0) {
        ConjType::Parabolic
    } else {
        ConjType::Semisimple
    };
    Ok(ConjClass { trace, kind })
}

/// Dimension of the traceless part of the commutant.
pub fn centralizer_dim(m: &Mat2) -> Result<usize> {
    if m.det() != gq(1, 0) {
        return Err(Error::NotUnimodular);
    }
    Ok(intertwiners(m, m).len() - 1)
}

pub fn can_glue(a: &Mat2, b: &Mat2) -> Result<bool> {
    Ok(conj_class(a)? == conj_class(b)?)
}

/// Boundary monodromy per half-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PantsRep {
    pub boundary: Vec<Mat2>,
}

/// Unimodular `a` with `a·right·a⁻¹ = left`, chosen deterministically:
/// small integer combinations of the intertwiner basis, diagonal ones
/// first, then by size; for a two-dimensional space whose determinant form
/// splits, an exact solution of `det = 1`.
pub fn conjugator(left: &Mat2, right: &Mat2) -> Option<Mat2> {
    let basis = intertwiners(left, right);
    if basis.is_empty() {
        return None;
    }
    let k = basis.len();
    let range: Vec<i64> = (-3..=3).collect();
    let mut coeffs: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..k {
        coeffs = coeffs.into_iter().flat_map(|c| range.iter().map(move |&x| [c.clone(), vec![x]].concat())).collect();
    }
    coeffs.sort_by_key(|c| (c.iter().map(|x| x.abs()).sum::<i64>(), c.iter().map(|x| -x).collect::<Vec<_>>()));
    let combine = |c: &[Gq]| {
        basis.iter().zip(c).fold(Mat2::new(Gq::zero(), Gq::zero(), Gq::zero(), Gq::zero()), |acc, (b, x)| acc.add(&b.scale(x)))
    };
    let mut first: Option<Mat2> = None;
    for c in &coeffs {
        let x = combine(&c.iter().map(|&v| gq(v, 0)).collect::<Vec<_>>());
        if let Some(u) = x.to_unimodular() {
            if u.is_diagonal() {
                return Some(u);
            }
            first.get_or_insert(u);
        }
    }
    if first.is_some() {
        return first;
    }
    if k == 2 {
        return split_solution(&basis[0], &basis[1]);
    }
    None
}

/// Solve `det(c₁B₁ + c₂B₂) = 1` when the binary form factors over `Q(i)`.
fn split_solution(b1: &Mat2, b2: &Mat2) -> Option<Mat2> {
    // det(c1 B1 + c2 B2) = α c1² + β c1 c2 + γ c2²
    let alpha = b1.det();
    let gamma = b2.det();
    let beta = b1.add(b2).det() - &alpha - &gamma;
    let disc = &beta * &beta - gq(4, 0) * &alpha * &gamma;
    if disc.is_zero() {
        return None;
    }
    let d = sqrt_gq(&disc)?;
    let (c1, c2) = if alpha.is_zero() {
        ((Gq::one() - &gamma) / &beta, Gq::one())
    } else {
        let two_a = gq(2, 0) * &alpha;
        let r1 = (-&beta + &d) / &two_a;
        let r2 = (-&beta - &d) / &two_a;
        let c2 = (Gq::one() / &alpha - Gq::one()) / (&r2 - &r1);
        (Gq::one() + &r2 * &c2, c2)
    };
    let x = b1.scale(&c1).add(&b2.scale(&c2));
    (x.det() == gq(1, 0)).then_some(x)
}

/// Edge gluing with `a(e)·M_{2e+1}·a(e)⁻¹ = M_{2e}`, after checking that the
/// boundary matrices around each vertex multiply to the identity in
/// half-edge order.
pub fn assemble_pants(g: &TrivalentGraph, pr: &PantsRep) -> Result<MatrixGluing> {
    if pr.boundary.len() != g.n_half_edges() {
        return Err(Error::DimensionMismatch(format!(
            "{} boundary matrices for {} half-edges",
            pr.boundary.len(),
            g.n_half_edges()
        )));
    }
    if pr.boundary.iter().any(|m| m.det() != gq(1, 0)) {
        return Err(Error::NotUnimodular);
    }
    for vertex in 0..g.n_vertices() {
        let mut star = g.star(vertex);
        star.sort_unstable();
        let prod = star.iter().fold(Mat2::identity(), |acc, &h| &acc * &pr.boundary[h]);
        if !prod.is_identity() {
            return Err(Error::PantsRelation { vertex });
        }
    }
    let mut values = Vec::with_capacity(g.n_edges());
    for edge in 0..g.n_edges() {
        let (ms, mt) = (&pr.boundary[2 * edge], &pr.boundary[2 * edge + 1]);
        if !can_glue(ms, mt)? {
            return Err(Error::GluingObstruction { edge });
        }
        values.push(conjugator(ms, mt).ok_or(Error::NoExactConjugator { edge })?);
    }
    MatrixGluing::new(g, values)
}

/// Meridian images along the non-tree edges; the tuple is returned as is,
/// so equality of forms is up to simultaneous conjugation.
pub fn forgetful(rho: &Representation, cw: &CircleWords) -> Result<CanonicalBundleForm<Mat2>> {
    if rho.genus != cw.genus() {
        return Err(Error::DimensionMismatch(format!("genus {} representation, genus {} graph", rho.genus, cw.genus())));
    }
    if !verify_relation(rho) {
        return Err(Error::RelationViolated);
    }
    let tuple = cw.tree.non_tree_edges.iter().map(|&e| evaluate(rho, &cw.words[e])).collect::<Result<_>>()?;
    Ok(CanonicalBundleForm {
        tree_edges: cw.tree.tree_edges.clone(),
        tuple,
        residual: ResidualSymmetry::SimultaneousConjugation,
        gauge: vec![Mat2::identity(); cw.tree.parent_edge.len()],
    })
}

/// Monodromy around every pants circle, tree edges included.
pub fn circle_monodromies(rho: &Representation, cw: &CircleWords) -> Result<Vec<Mat2>> {
    cw.words.iter().map(|w| evaluate(rho, w)).collect()
}

pub fn schottky_section(b: &CanonicalBundleForm<Mat2>) -> Representation {
    let genus = b.tuple.len();
    Representation { genus, meridians: b.tuple.clone(), longitudes: vec![Mat2::identity(); genus] }
}

/// Section of the bundle form of a gluing.
pub fn schottky_section_of(g: &TrivalentGraph, a: &MatrixGluing) -> Result<Representation> {
    Ok(schottky_section(&canonical_form(g, a)?))
}

fn probe_conjugators() -> [Mat2; 3] {
    [
        Mat2::from_ints(1, 1, 0, 1),
        Mat2::from_ints(2, 1, 1, 1),
        Mat2::new(gq(1, 0), gq(0, 0), gq(0, 1), gq(1, 0)),
    ]
}

/// Constructive uniqueness on the Schottky locus: the section lies on the
/// locus and satisfies the relation, restricts back to `b`, and every probed
/// global conjugate restricts to an equivalent form and is recovered by the
/// section from its own restriction.
pub fn schottky_unique(g: &TrivalentGraph, b: &CanonicalBundleForm<Mat2>) -> Result<bool> {
    let cw = circle_words(g);
    let rho = schottky_section(b);
    if !verify_relation(&rho) || !on_schottky_locus(&rho) || forgetful(&rho, &cw)?.tuple != b.tuple {
        return Ok(false);
    }
    for p in probe_conjugators() {
        let other = rho.conjugate(&p);
        if !on_schottky_locus(&other) {
            return Ok(false);
        }
        let restricted = forgetful(&other, &cw)?;
        if !tuples_equivalent(&restricted.tuple, &b.tuple) || schottky_section(&restricted) != other {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    Schottky,
    Diagonal,
    Conjugated,
}

impl std::str::FromStr for SampleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schottky" => Ok(SampleMode::Schottky),
            "diagonal" => Ok(SampleMode::Diagonal),
            "conjugated" => Ok(SampleMode::Conjugated),
            _ => Err(Error::Parse(format!("unknown sample mode {s:?}"))),
        }
    }
}

fn sample_with<R: Rng>(genus: usize, diagonal: bool, rng: &mut R) -> Representation {
    if diagonal {
        let mut d = || Mat2::diag(Gq::new(crate::bundle::random_scalar(rng), num::Zero::zero()));
        let meridians = (0..genus).map(|_| d()).collect();
        let longitudes = (0..genus).map(|_| d()).collect();
        Representation { genus, meridians, longitudes }
    } else {
        let meridians = (0..genus)
            .map(|_| {
                let steps = rng.gen_range(2..=5);
                Mat2::random_unimodular(rng, steps, false)
            })
            .collect();
        Representation { genus, meridians, longitudes: vec![Mat2::identity(); genus] }
    }
}

pub fn sample_representation(genus: usize, mode: SampleMode, seed: u64) -> Result<Representation> {
    if genus < 2 {
        return Err(Error::GenusTooSmall { genus });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match mode {
        SampleMode::Schottky => sample_with(genus, false, &mut rng),
        SampleMode::Diagonal => sample_with(genus, true, &mut rng),
        SampleMode::Conjugated => {
            let diagonal = rng.gen_bool(0.5);
            let rho = sample_with(genus, diagonal, &mut rng);
            rho.conjugate(&Mat2::random_unimodular(&mut rng, 4, true))
        }
    })
}

/// `(tr A, tr B, tr AB)`.
pub fn fricke_coordinates(a: &Mat2, b: &Mat2) -> [Gq; 3] {
    [a.trace(), b.trace(), (a * b).trace()]
}

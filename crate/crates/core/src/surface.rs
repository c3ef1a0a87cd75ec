//! Words in the surface group of genus `g`, the projection to the free group
//! of the graph, and words for the pants-decomposition circles.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::loops::CombinatorialLoop;
use crate::graph::{edge_of, SpanningTree, TrivalentGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Meridian(usize),
    Longitude(usize),
}

pub trait Symbol: Copy + Eq + fmt::Debug {
    fn name(&self) -> String;
}

impl Symbol for Generator {
    fn name(&self) -> String {
        match self {
            Generator::Meridian(i) => format!("m{i}"),
            Generator::Longitude(i) => format!("l{i}"),
        }
    }
}

/// Free generator `x_i` of the graph's fundamental group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct X(pub usize);

impl Symbol for X {
    fn name(&self) -> String {
        format!("x{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter<G> {
    pub gen: G,
    pub inverse: bool,
}

impl<G: Symbol> Letter<G> {
    pub fn new(gen: G, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word<G> {
    letters: Vec<Letter<G>>,
}

pub type SurfaceWord = Word<Generator>;
pub type FreeWord = Word<X>;

impl<G: Symbol> Word<G> {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn gen(g: G) -> Self {
        Word { letters: vec![Letter::new(g, false)] }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter<G>>) -> Self {
        let mut out: Vec<Letter<G>> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter<G>] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Word::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Self {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    pub fn conjugate_by(&self, c: &Self) -> Self {
        c.mul(self).mul(&c.inverse())
    }

    pub fn product<'a>(words: impl IntoIterator<Item = &'a Self>) -> Self
    where
        G: 'a,
    {
        Word::from_letters(words.into_iter().flat_map(|w| w.letters.iter().copied()))
    }
}

impl<G: Symbol> fmt::Display for Word<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| if l.inverse { format!("{}^-1", l.gen.name()) } else { l.gen.name() })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for SurfaceWord {
    type Err = Error;

    /// Whitespace-separated tokens `m<i>`, `l<i>`, optionally `^-1` or `^1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (base, inverse) = match tok.split_once('^') {
                Some((b, "-1")) => (b, true),
                Some((b, "1")) => (b, false),
                Some(_) => return Err(Error::Parse(format!("bad exponent in {tok:?}"))),
                None => (tok, false),
            };
            let index = |rest: &str| {
                rest.parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| Error::UnknownGenerator(base.to_string()))
            };
            let gen = if let Some(rest) = base.strip_prefix('m') {
                Generator::Meridian(index(rest)?)
            } else if let Some(rest) = base.strip_prefix('l') {
                Generator::Longitude(index(rest)?)
            } else {
                return Err(Error::UnknownGenerator(base.to_string()));
            };
            letters.push(Letter::new(gen, inverse));
        }
        Ok(Word::from_letters(letters))
    }
}

impl SurfaceWord {
    /// Largest generator index used, for checking against a genus.
    pub fn max_index(&self) -> usize {
        self.letters
            .iter()
            .map(|l| match l.gen {
                Generator::Meridian(i) | Generator::Longitude(i) => i,
            })
            .max()
            .unwrap_or(0)
    }
}

pub fn m(i: usize) -> SurfaceWord {
    Word::gen(Generator::Meridian(i))
}

pub fn l(i: usize) -> SurfaceWord {
    Word::gen(Generator::Longitude(i))
}

fn commutator(a: &SurfaceWord, b: &SurfaceWord) -> SurfaceWord {
    Word::product([a, b, &a.inverse(), &b.inverse()])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub genus: usize,
}

impl Presentation {
    pub fn generators(&self) -> Vec<Generator> {
        let ms = (1..=self.genus).map(Generator::Meridian);
        ms.chain((1..=self.genus).map(Generator::Longitude)).collect()
    }

    /// `∏ [m_i, l_i]`.
    pub fn relation(&self) -> SurfaceWord {
        let parts: Vec<SurfaceWord> = (1..=self.genus).map(|i| commutator(&m(i), &l(i))).collect();
        Word::product(&parts)
    }
}

pub fn presentation(genus: usize) -> Result<Presentation> {
    if genus < 2 {
        return Err(Error::GenusTooSmall { genus });
    }
    Ok(Presentation { genus })
}

/// Forget meridians and send `l_i` to `x_i`.
pub fn project_r(w: &SurfaceWord) -> FreeWord {
    Word::from_letters(w.letters().iter().filter_map(|l| match l.gen {
        Generator::Meridian(_) => None,
        Generator::Longitude(i) => Some(Letter::new(X(i), l.inverse)),
    }))
}

/// Exponent sums over `(m_1..m_g, l_1..l_g)`.
pub fn homology_class(w: &SurfaceWord, genus: usize) -> Vec<i64> {
    let mut v = vec![0i64; 2 * genus];
    for l in w.letters() {
        let (block, i) = match l.gen {
            Generator::Meridian(i) => (0, i),
            Generator::Longitude(i) => (genus, i),
        };
        if i <= genus {
            v[block + i - 1] += if l.inverse { -1 } else { 1 };
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleWords {
    pub tree: SpanningTree,
    pub base_vertex: usize,
    pub words: Vec<SurfaceWord>,
    graph: Vec<usize>,
}

/// Coefficient of tree edge `e` in the fundamental cycle of each non-tree
/// edge: the cycle runs along the non-tree edge in its reference direction
/// and returns through the tree.
pub fn cut_coefficients(g: &TrivalentGraph, tree: &SpanningTree, e: usize) -> Vec<i64> {
    let (s, t) = g.ends(e);
    let child = if tree.parent_edge[t] == Some(e) { t } else { s };
    let parent_vertex = |v: usize| {
        let pe = tree.parent_edge[v].expect("non-root vertex");
        let (a, b) = g.ends(pe);
        if a == v {
            b
        } else {
            a
        }
    };
    let below = |mut x: usize| {
        while tree.depth[x] > tree.depth[child] {
            x = parent_vertex(x);
        }
        x == child
    };
    // the reference direction of e points away from the root iff child == t
    let down = if child == t { 1 } else { -1 };
    tree.non_tree_edges
        .iter()
        .map(|&f| {
            let (fs, ft) = g.ends(f);
            match (below(fs), below(ft)) {
                // returning from ft (inside) to fs (outside) climbs e
                (false, true) => -down,
                (true, false) => down,
                _ => 0,
            }
        })
        .collect()
}

/// Non-tree edge `j` (in id order) gets `m_{j+1}`. A tree edge gets
/// `∏_j c_j m_j^{s_j} c_j⁻¹` over the cycles crossing it, where `s_j` is
/// the crossing sign and `c_j` is the product of the longitudes of the
/// earlier crossing cycles.
pub fn circle_words(g: &TrivalentGraph) -> CircleWords {
    let tree = g.spanning_tree();
    let mut words = vec![Word::identity(); g.n_edges()];
    for (j, &f) in tree.non_tree_edges.iter().enumerate() {
        words[f] = m(j + 1);
    }
    for &e in &tree.tree_edges {
        let mut conj = Word::identity();
        let mut w = Word::identity();
        for (j, s) in cut_coefficients(g, &tree, e).into_iter().enumerate() {
            if s != 0 {
                w = w.mul(&m(j + 1).pow(s).conjugate_by(&conj));
                conj = conj.mul(&l(j + 1));
            }
        }
        words[e] = w;
    }
    CircleWords { tree, base_vertex: 0, words, graph: g.fingerprint() }
}

impl CircleWords {
    pub fn genus(&self) -> usize {
        self.tree.non_tree_edges.len()
    }

    pub fn to_file(&self) -> CircleWordsFile {
        CircleWordsFile {
            tree: self.tree.tree_edges.clone(),
            words: self.words.iter().enumerate().map(|(e, w)| (e, w.to_string())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircleWordsFile {
    pub tree: Vec<usize>,
    pub words: BTreeMap<usize, String>,
}

/// Product of the circle words along the loop, each inverted when the step
/// runs against the edge's reference direction.
pub fn int_map(lp: &CombinatorialLoop, cw: &CircleWords) -> Result<SurfaceWord> {
    if lp.graph_fingerprint() != cw.graph.as_slice() {
        return Err(Error::MismatchedGraph);
    }
    let parts: Vec<SurfaceWord> = lp
        .steps
        .iter()
        .map(|&h| {
            let w = &cw.words[edge_of(h)];
            if h % 2 == 0 {
                w.clone()
            } else {
                w.inverse()
            }
        })
        .collect();
    Ok(Word::product(&parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn w(s: &str) -> SurfaceWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(w("m1 l2^-1 m1^-1").to_string(), "m1 l2^-1 m1^-1");
        assert_eq!(w("m1 m1^-1"), SurfaceWord::identity());
        assert!("q1".parse::<SurfaceWord>().is_err());
        assert!("m0".parse::<SurfaceWord>().is_err());
        assert!("m1^2".parse::<SurfaceWord>().is_err());
    }

    #[test]
    fn presentations() {
        assert_eq!(presentation(2).unwrap().relation().len(), 8);
        assert_eq!(presentation(2).unwrap().relation().to_string(), "m1 l1 m1^-1 l1^-1 m2 l2 m2^-1 l2^-1");
        let p3 = presentation(3).unwrap();
        assert_eq!(p3.generators().len(), 6);
        assert_eq!(p3.relation().len(), 12);
        assert_eq!(presentation(1), Err(Error::GenusTooSmall { genus: 1 }));
    }

    #[test]
    fn projection() {
        assert!(project_r(&w("m1")).is_identity());
        assert!(project_r(&w("l2 m1 l2^-1")).is_identity());
        assert_eq!(project_r(&w("l1 l2 m2 l1")).to_string(), "x1 x2 x1");
    }

    #[test]
    fn homology() {
        assert_eq!(homology_class(&w("m1 l1 m1^-1"), 2), vec![0, 0, 1, 0]);
        assert_eq!(homology_class(&presentation(3).unwrap().relation(), 3), vec![0; 6]);
    }

    #[test]
    fn theta_circle_words() {
        let cw = circle_words(&theta());
        assert_eq!(cw.tree.tree_edges, vec![0]);
        assert_eq!(cw.words[1], m(1));
        assert_eq!(cw.words[2], m(2));
        assert_eq!(homology_class(&cw.words[0], 2), vec![-1, -1, 0, 0]);
        for word in &cw.words {
            assert!(project_r(word).is_identity());
        }
    }

    #[test]
    fn dumbbell_bridge_word() {
        let cw = circle_words(&dumbbell());
        assert_eq!(cw.words[0], m(1));
        assert_eq!(cw.words[2], m(2));
        assert_eq!(homology_class(&cw.words[1], 2), vec![0; 4]);
    }

    #[test]
    fn theta_two_loop() {
        let g = theta();
        let cw = circle_words(&g);
        let lp = CombinatorialLoop::new(&g, 0, vec![2, 5]).unwrap();
        assert_eq!(int_map(&lp, &cw).unwrap().to_string(), "m1 m2^-1");
        let empty = CombinatorialLoop::new(&g, 0, vec![]).unwrap();
        assert!(int_map(&empty, &cw).unwrap().is_identity());
        let other = CombinatorialLoop::new(&k4(), 0, vec![]).unwrap();
        assert_eq!(int_map(&other, &cw), Err(Error::MismatchedGraph));
    }
}

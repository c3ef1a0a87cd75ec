//! End-to-end property sweep over all graphs up to a genus, with a
//! reproducible report.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bundle::{
    abelian_moduli_dim, automorphism_dim, canonical_form, from_tuple, gauge_apply, line_equivalent, packet_dim,
    random_diagonal_gluing, random_matrix_gluing, random_scalar, random_scalar_gluing, sl2_equivalent, MatrixGluing,
};
use crate::curve::{base_points, biresidue_rank, bicanonical_space, canonical_space, separates_nodes, MarkedCurve};
use crate::error::{Error, Result};
use crate::graph::counting::{counting_report, CountingReport};
use crate::graph::cuts::thickness;
use crate::graph::enumerate::enumerate_graphs;
use crate::graph::flip::{flags_of, flip, insert_edge, reduce_genus};
use crate::graph::TrivalentGraph;
use crate::mat2::Mat2;
use crate::reps::{forgetful, on_schottky_locus, schottky_section, schottky_unique, verify_relation};
use crate::surface::circle_words;

pub const MAX_SUITE_GENUS: usize = 5;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub genus_max: usize,
    pub seed: u64,
    /// Random gluings per graph for the gauge checks.
    pub gauge_samples: usize,
    /// Random gluings per graph for the packet identity.
    pub packet_samples: usize,
    /// Random bundle forms per genus for the Schottky checks.
    pub schottky_samples: usize,
    /// Highest genus for the flip, gauge, packet and Schottky sweeps.
    pub sweep_genus_max: usize,
    pub timing: bool,
}

impl SuiteConfig {
    pub fn new(genus_max: usize, seed: u64) -> Self {
        SuiteConfig {
            genus_max,
            seed,
            gauge_samples: 20,
            packet_samples: 5,
            schottky_samples: 50,
            sweep_genus_max: genus_max.min(4),
            timing: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphRecord {
    pub genus: usize,
    pub index: usize,
    pub edges: Vec<(usize, usize)>,
    pub thickness: usize,
    #[serde(rename = "dim_K")]
    pub dim_k: usize,
    #[serde(rename = "dim_2K")]
    pub dim_2k: usize,
    pub biresidue_rank: usize,
    pub base_points: Vec<usize>,
    /// `None` when the canonical system has base points.
    pub separates_nodes: Option<bool>,
    pub automorphisms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub property: String,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub genus: usize,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub version: String,
    pub seed: u64,
    pub genus_max: usize,
    pub graphs: Vec<GraphRecord>,
    pub counting: Vec<CountingReport>,
    pub properties: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<Timing>>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|v| v.passed)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.properties.iter().find(|v| !v.passed)
    }
}

/// Independent stream per (purpose, genus, graph) so results do not depend
/// on scheduling.
pub fn stream(seed: u64, purpose: u64, genus: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(purpose << 32 | (genus as u64) << 16 | index as u64);
    rng
}

struct Tally {
    property: &'static str,
    checked: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(property: &'static str) -> Self {
        Tally { property, checked: 0, witness: None }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }

    fn verdict(self) -> Verdict {
        Verdict {
            property: self.property.to_string(),
            passed: self.witness.is_none(),
            checked: self.checked,
            witness: self.witness,
        }
    }
}

fn describe(g: &TrivalentGraph) -> String {
    format!("{:?}", g.edges().collect::<Vec<_>>())
}

fn graph_record(genus: usize, index: usize, g: &TrivalentGraph) -> GraphRecord {
    let curve = MarkedCurve::of_graph(g);
    let k = canonical_space(&curve);
    let two_k = bicanonical_space(&curve).expect("graph curves are trivalent");
    GraphRecord {
        genus,
        index,
        edges: g.edges().collect(),
        thickness: thickness(g),
        dim_k: k.dimension(),
        dim_2k: two_k.dimension(),
        biresidue_rank: biresidue_rank(&two_k),
        base_points: base_points(g),
        separates_nodes: separates_nodes(g).ok(),
        automorphisms: g.automorphism_count(),
    }
}

/// Flip coherence: every member of a nest flips to the same nest; loop
/// flags are fixed. Reduction round-trips through edge insertion.
fn check_flips(g: &TrivalentGraph) -> (Tally, Tally) {
    let mut coherence = Tally::new("flip nests are coherent and loop flags are fixed");
    let mut round_trip = Tally::new("reduce_genus round-trips through insert_edge");
    for f in flags_of(g) {
        let nest = flip(&f);
        let sig = nest.signature();
        if f.is_loop() {
            let fixed = nest.flags.iter().all(|m| m.label() == f.label());
            coherence.check(fixed, || format!("loop flag {} of {}", f.edge, describe(g)));
        } else {
            let ok = nest.flags.iter().all(|m| flip(m).signature() == sig);
            coherence.check(ok, || format!("flag {} of {}", f.edge, describe(g)));
        }
        if let Ok(r) = reduce_genus(&f) {
            let back = insert_edge(&r.graph, r.marked.0, r.marked.1).map(|b| b.label() == f.label());
            round_trip.check(back == Ok(true), || format!("flag {} of {}", f.edge, describe(g)));
        }
    }
    (coherence, round_trip)
}

/// Scalar and rank-2 gauge invariance, tuple size, and surjectivity of the
/// tuple placement.
fn check_gauge(g: &TrivalentGraph, samples: usize, rng: &mut ChaCha8Rng) -> (Tally, Tally) {
    let mut line = Tally::new("scalar gauge orbits have one canonical tuple of size g");
    let mut rank2 = Tally::new("rank-2 gauge orbits are sl2-equivalent and conjugate");
    let n = g.n_vertices();
    let genus = g.genus();
    for _ in 0..samples {
        let a = random_scalar_gluing(g, rng);
        let gauge: Vec<_> = (0..n).map(|_| random_scalar(rng)).collect();
        let b = gauge_apply(g, &a, &gauge).expect("same graph");
        let ca = canonical_form(g, &a).expect("same graph");
        let placed = from_tuple(g, &ca.tuple).and_then(|p| canonical_form(g, &p)).map(|c| c.tuple == ca.tuple);
        let ok = line_equivalent(g, &a, &b) == Ok(true)
            && ca.tuple.len() == genus
            && abelian_moduli_dim(g) == genus
            && placed == Ok(true);
        line.check(ok, || format!("scalar gluing {:?} on {}", a.values(), describe(g)));
    }
    for _ in 0..samples {
        let complex = rand::Rng::gen_bool(rng, 0.5);
        let a = random_matrix_gluing(g, rng, complex);
        let gauge: Vec<_> = (0..n).map(|_| Mat2::random_unimodular(rng, 3, complex)).collect();
        let b = gauge_apply(g, &a, &gauge).expect("same graph");
        let ca = canonical_form(g, &a).expect("same graph");
        let cb = canonical_form(g, &b).expect("same graph");
        let p = &gauge[0];
        let conjugate = ca.tuple.iter().zip(&cb.tuple).all(|(x, y)| &p.conjugate(x) == y);
        let ok = sl2_equivalent(g, &a, &b) == Ok(true) && conjugate && ca.tuple.len() == genus;
        rank2.check(ok, || format!("matrix gluing {:?} on {}", a.values(), describe(g)));
    }
    (line, rank2)
}

fn check_packets(g: &TrivalentGraph, samples: usize, rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new("packet_dim - automorphism_dim = 3g-3");
    let mut gluings = vec![MatrixGluing::trivial(g), random_diagonal_gluing(g, rng)];
    for i in 0..samples {
        gluings.push(random_matrix_gluing(g, rng, i % 2 == 1));
    }
    for a in gluings {
        let p = packet_dim(g, &a).expect("same graph");
        let aut = automorphism_dim(g, &a).expect("same graph");
        t.check(p == aut + 3 * g.genus() - 3, || {
            format!("packet {p}, automorphisms {aut} for {:?} on {}", a.values(), describe(g))
        });
    }
    t
}

/// Random canonical forms on the genus's first graph class: section
/// relation, locus membership, round trip and constructive uniqueness.
fn check_schottky(g: &TrivalentGraph, samples: usize, rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new("Schottky section exists, round-trips and is unique on the locus");
    let cw = circle_words(g);
    for i in 0..samples {
        let a = match i % 3 {
            0 => random_matrix_gluing(g, rng, false),
            1 => random_matrix_gluing(g, rng, true),
            _ => random_diagonal_gluing(g, rng),
        };
        let b = canonical_form(g, &a).expect("same graph");
        let rho = schottky_section(&b);
        let ok = verify_relation(&rho)
            && on_schottky_locus(&rho)
            && forgetful(&rho, &cw).map(|f| f.tuple == b.tuple) == Ok(true)
            && schottky_unique(g, &b) == Ok(true);
        t.check(ok, || format!("tuple {:?} on {}", b.tuple, describe(g)));
    }
    t
}

pub fn run_suite(config: &SuiteConfig) -> Result<RunReport> {
    if config.genus_max > MAX_SUITE_GENUS {
        return Err(Error::GenusTooLarge { genus: config.genus_max, max: MAX_SUITE_GENUS });
    }
    if config.genus_max < 2 {
        return Err(Error::GenusTooSmall { genus: config.genus_max });
    }
    let mut graphs = Vec::new();
    let mut counting = Vec::new();
    let mut timing = Vec::new();
    let mut dims = Tally::new("dim H0(K) = g");
    let mut bidims = Tally::new("dim H0(2K) = 3g-3 and biresidues have rank 3g-3");
    let mut artamkin = Tally::new("no base points iff thickness >= 2");
    let mut coherence = Tally::new("flip nests are coherent and loop flags are fixed");
    let mut round_trip = Tally::new("reduce_genus round-trips through insert_edge");
    let mut counts = Tally::new("counting report is internally consistent");
    let mut line = Tally::new("scalar gauge orbits have one canonical tuple of size g");
    let mut rank2 = Tally::new("rank-2 gauge orbits are sl2-equivalent and conjugate");
    let mut packets = Tally::new("packet_dim - automorphism_dim = 3g-3");
    let mut schottky = Tally::new("Schottky section exists, round-trips and is unique on the locus");

    for genus in 2..=config.genus_max {
        let start = Instant::now();
        let classes = enumerate_graphs(genus)?;
        let records: Vec<GraphRecord> =
            classes.par_iter().enumerate().map(|(i, g)| graph_record(genus, i, g)).collect();
        for r in &records {
            dims.check(r.dim_k == genus, || format!("genus {genus} graph {}: dim {}", r.index, r.dim_k));
            let want = 3 * genus - 3;
            bidims.check(r.dim_2k == want && r.biresidue_rank == want, || {
                format!("genus {genus} graph {}: dim {} rank {}", r.index, r.dim_2k, r.biresidue_rank)
            });
            artamkin.check(r.base_points.is_empty() == (r.thickness >= 2), || {
                format!("genus {genus} graph {}: base points {:?}, thickness {}", r.index, r.base_points, r.thickness)
            });
        }
        graphs.extend(records);

        if genus <= 3 {
            let report = counting_report(genus)?;
            counts.check(report.consistency.all(), || format!("genus {genus}: {:?}", report.consistency));
            counting.push(report);
        }

        if genus <= config.sweep_genus_max {
            let per_graph: Vec<[Tally; 5]> = classes
                .par_iter()
                .enumerate()
                .map(|(i, g)| {
                    let (c, r) = check_flips(g);
                    let (l, m) = check_gauge(g, config.gauge_samples, &mut stream(config.seed, 1, genus, i));
                    let p = check_packets(g, config.packet_samples, &mut stream(config.seed, 2, genus, i));
                    [c, r, l, m, p]
                })
                .collect();
            for [c, r, l, m, p] in per_graph {
                coherence.merge(c);
                round_trip.merge(r);
                line.merge(l);
                rank2.merge(m);
                packets.merge(p);
            }
            // spread the Schottky samples over the genus's classes
            let per_class: Vec<Tally> = classes
                .par_iter()
                .enumerate()
                .map(|(i, g)| {
                    let share = config.schottky_samples / classes.len()
                        + usize::from(i < config.schottky_samples % classes.len());
                    check_schottky(g, share, &mut stream(config.seed, 3, genus, i))
                })
                .collect();
            for t in per_class {
                schottky.merge(t);
            }
        }
        timing.push(Timing { genus, millis: start.elapsed().as_millis() });
    }

    let properties = [dims, bidims, artamkin, coherence, round_trip, counts, line, rank2, packets, schottky]
        .into_iter()
        .map(Tally::verdict)
        .collect();
    Ok(RunReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: config.seed,
        genus_max: config.genus_max,
        graphs,
        counting,
        properties,
        timing: config.timing.then_some(timing),
    })
}

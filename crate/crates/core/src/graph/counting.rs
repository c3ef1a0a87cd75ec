//! Flag, loop-flag and nest-component counts over all graphs of a genus.
//!
//! Two conventions are reported side by side. `classes` counts isomorphism
//! classes (of graphs, of flagged graphs, of nest components). `orbifold`
//! weights every object by the inverse order of its automorphism group, so a
//! graph's flags contribute exactly `|E|/|Aut|`. The per-graph edge totals
//! (`flags_by_edge`) are the raw fibre sizes of the flag-to-graph map.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};
use serde::Serialize;

use super::enumerate::enumerate_graphs;
use super::flip::{flags_of, flip, FlagLabel};
use super::TrivalentGraph;
use crate::error::{Error, Result};
use crate::field::{format_q, q, Q};

pub const MAX_COUNTING_GENUS: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct CountingReport {
    pub genus: usize,
    /// Σ over graph classes of |E(Γ)|.
    pub flags_by_edge: usize,
    /// Σ over graph classes of the number of loop edges.
    pub loop_flags_by_edge: usize,
    pub classes: ConventionCounts<usize>,
    pub orbifold: ConventionCounts<String>,
    pub consistency: Consistency,
    /// Graph-class indices of the three members of each component's nest.
    pub nests: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConventionCounts<T> {
    pub graphs: T,
    pub flags: T,
    pub loop_flags: T,
    pub components: T,
    /// `3·|Com| − |LTG|` and `3(g−1)·|TG|`.
    pub lhs: T,
    pub rhs: T,
    pub identity_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Consistency {
    /// Every component is exactly the set of classes in one nest.
    pub components_are_nests: bool,
    /// Loop-flag components are single loop classes; others contain no loops.
    pub loops_ramify: bool,
    /// Within each non-loop component, weight / multiplicity in the nest is
    /// constant: the flag set is an honest 3-to-1 cover there.
    pub three_to_one: bool,
    /// Orbifold flag total equals (3g−3) times the orbifold graph total.
    pub flag_fibres: bool,
}

impl Consistency {
    pub fn all(&self) -> bool {
        self.components_are_nests && self.loops_ramify && self.three_to_one && self.flag_fibres
    }
}

struct FlagClass {
    graph_index: usize,
    is_loop: bool,
    weight: Q,
    nest: [FlagLabel; 3],
}

pub fn counting_report(genus: usize) -> Result<CountingReport> {
    if genus > MAX_COUNTING_GENUS {
        return Err(Error::GenusTooLarge { genus, max: MAX_COUNTING_GENUS });
    }
    let graphs = enumerate_graphs(genus)?;
    counting_report_for(genus, &graphs)
}

fn inverse(n: u64) -> Q {
    Q::new(BigInt::one(), BigInt::from(n))
}

pub(crate) fn counting_report_for(genus: usize, graphs: &[TrivalentGraph]) -> Result<CountingReport> {
    let graph_index: BTreeMap<Vec<u8>, usize> =
        graphs.iter().enumerate().map(|(i, g)| (g.canonical_key().to_vec(), i)).collect();

    let mut classes: BTreeMap<FlagLabel, FlagClass> = BTreeMap::new();
    for (i, g) in graphs.iter().enumerate() {
        for f in flags_of(g) {
            let label = f.label();
            if classes.contains_key(&label) {
                continue;
            }
            let nest = flip(&f).signature();
            classes.insert(
                label,
                FlagClass { graph_index: i, is_loop: f.is_loop(), weight: inverse(f.automorphism_count()), nest },
            );
        }
    }

    // union-find over flag classes by "appears in the flip output"
    let labels: Vec<&FlagLabel> = classes.keys().collect();
    let index_of: BTreeMap<&FlagLabel, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (i, l) in labels.iter().enumerate() {
        for m in &classes[*l].nest {
            let j = *index_of.get(m).ok_or_else(|| {
                Error::DimensionMismatch("flip produced a flag outside the enumerated genus".into())
            })?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..labels.len() {
        let r = find(&mut parent, i);
        components.entry(r).or_default().push(i);
    }

    let mut components_are_nests = true;
    let mut loops_ramify = true;
    let mut three_to_one = true;
    let mut orbifold_components = Q::zero();
    let mut nests = Vec::new();
    for members in components.values() {
        let first = &classes[labels[members[0]]];
        let mut nest_set: Vec<&FlagLabel> = first.nest.iter().collect();
        nest_set.dedup();
        let member_set: Vec<&FlagLabel> = members.iter().map(|&i| labels[i]).collect();
        if nest_set != member_set {
            components_are_nests = false;
        }
        nests.push(first.nest.clone().map(|l| {
            let c = &classes[&l];
            graph_index[graphs[c.graph_index].canonical_key()]
        }));
        let any_loop = members.iter().any(|&i| classes[labels[i]].is_loop);
        if any_loop {
            if members.len() != 1 {
                loops_ramify = false;
            }
            orbifold_components += first.weight.clone();
        } else {
            let ratios: Vec<Q> = members
                .iter()
                .map(|&i| {
                    let mult = first.nest.iter().filter(|l| *l == labels[i]).count() as i64;
                    classes[labels[i]].weight.clone() / q(mult)
                })
                .collect();
            if ratios.windows(2).any(|w| w[0] != w[1]) {
                three_to_one = false;
            }
            let total: Q = members.iter().map(|&i| classes[labels[i]].weight.clone()).sum();
            orbifold_components += total / q(3);
        }
    }

    let g = genus as i64;
    let tg = graphs.len();
    let etg = classes.len();
    let ltg = classes.values().filter(|c| c.is_loop).count();
    let com = components.len();
    let class_lhs = 3 * com as i64 - ltg as i64;
    let class_rhs = 3 * (g - 1) * tg as i64;

    let tg_w: Q = graphs.iter().map(|g| inverse(g.automorphism_count())).sum();
    let etg_w: Q = classes.values().map(|c| c.weight.clone()).sum();
    let ltg_w: Q = classes.values().filter(|c| c.is_loop).map(|c| c.weight.clone()).sum();
    let lhs_w = q(3) * &orbifold_components - &ltg_w;
    let rhs_w = q(3 * (g - 1)) * &tg_w;

    Ok(CountingReport {
        genus,
        flags_by_edge: graphs.iter().map(|g| g.n_edges()).sum(),
        loop_flags_by_edge: graphs.iter().map(|g| g.loop_edges().len()).sum(),
        classes: ConventionCounts {
            graphs: tg,
            flags: etg,
            loop_flags: ltg,
            components: com,
            lhs: class_lhs.max(0) as usize,
            rhs: class_rhs as usize,
            identity_holds: class_lhs == class_rhs,
        },
        orbifold: ConventionCounts {
            graphs: format_q(&tg_w),
            flags: format_q(&etg_w),
            loop_flags: format_q(&ltg_w),
            components: format_q(&orbifold_components),
            lhs: format_q(&lhs_w),
            rhs: format_q(&rhs_w),
            identity_holds: lhs_w == rhs_w,
        },
        consistency: Consistency {
            components_are_nests,
            loops_ramify,
            three_to_one,
            flag_fibres: etg_w == q(3 * (g - 1)) * &tg_w,
        },
        nests,
    })
}

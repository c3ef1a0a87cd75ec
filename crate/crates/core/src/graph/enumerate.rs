//! Isomorphism classes of connected trivalent multigraphs of a given genus.
//!
//! Genus `g ≥ 3` graphs are grown from genus `g − 1` classes by two moves:
//! inserting an edge between two points of (one or two) edges, and attaching
//! a looped pendant vertex to an edge. Every genus `g ≥ 3` graph either has
//! an edge whose deletion-and-smoothing is a valid genus `g − 1` graph (any
//! edge that is not a loop, not a bridge and not next to a loop), or consists
//! only of loops and bridges, in which case removing a pendant loop works.
//! So the two moves reach every class.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::flip::{attach_loop, insert_edge};
use super::TrivalentGraph;
use crate::error::{Error, Result};

pub const MAX_GENUS: usize = 6;

/// One graph per isomorphism class, each in canonical form, sorted by
/// canonical key.
pub fn enumerate_graphs(genus: usize) -> Result<Vec<TrivalentGraph>> {
    if genus < 2 {
        return Err(Error::GenusTooSmall { genus });
    }
    if genus > MAX_GENUS {
        return Err(Error::GenusTooLarge { genus, max: MAX_GENUS });
    }
    let mut classes = genus_two();
    for _ in 3..=genus {
        classes = grow(&classes);
    }
    Ok(classes)
}

/// Two vertices: either a loop at vertex 0 (forcing one bridge and a loop at
/// vertex 1) or none (forcing three parallel edges).
fn genus_two() -> Vec<TrivalentGraph> {
    let mut out = BTreeMap::new();
    for loops_at_0 in 0..=1usize {
        let between = 3 - 2 * loops_at_0;
        let loops_at_1 = (3 - between) / 2;
        let mut edges = vec![(0, 0); loops_at_0];
        edges.extend(std::iter::repeat_n((0, 1), between));
        edges.extend(std::iter::repeat_n((1, 1), loops_at_1));
        let g = TrivalentGraph::from_edges(&edges).expect("valid two-vertex graph").canonical_graph();
        out.insert(g.canonical_key().to_vec(), g);
    }
    out.into_values().collect()
}

fn grow(previous: &[TrivalentGraph]) -> Vec<TrivalentGraph> {
    let candidates: Vec<TrivalentGraph> = previous
        .par_iter()
        .flat_map_iter(|g| {
            let m = g.n_edges();
            let pairs = (0..m).flat_map(move |a| (a..m).map(move |b| (a, b)));
            let inserted = pairs.map(|(a, b)| insert_edge(g, a, b).map(|f| f.graph));
            let attached = (0..m).map(|a| attach_loop(g, a));
            inserted
                .chain(attached)
                .map(|r| r.expect("augmentation of a valid graph is valid"))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut classes = BTreeMap::new();
    for g in candidates {
        let key = g.canonical_key().to_vec();
        classes.entry(key).or_insert_with(|| g.canonical_graph());
    }
    classes.into_values().collect()
}

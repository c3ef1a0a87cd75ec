//! Bridges and edge connectivity ("thickness").

use super::{edge_of, partner, TrivalentGraph};

/// Bridges of the graph minus `removed`, via low-link numbering over
/// half-edges so parallel edges and loops are handled by edge identity.
pub fn bridges_without(g: &TrivalentGraph, removed: Option<usize>) -> Vec<usize> {
    let n = g.n_vertices();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut out = Vec::new();
    // iterative DFS: (vertex, entering edge, next star slot)
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(top) = stack.last_mut() {
            let (v, via, slot) = *top;
            if slot < 3 {
                top.2 += 1;
                let h = g.star(v)[slot];
                let e = edge_of(h);
                if Some(e) == via || Some(e) == removed {
                    continue;
                }
                let w = g.vertex_of(partner(h));
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        out.push(via.expect("non-root has an entering edge"));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn bridges(g: &TrivalentGraph) -> Vec<usize> {
    bridges_without(g, None)
}

pub fn is_bridge(g: &TrivalentGraph, e: usize) -> bool {
    bridges(g).contains(&e)
}

/// Minimum number of edges whose removal disconnects the graph. Always at
/// most 3: the non-loop edges at a loop-free vertex separate it.
pub fn thickness(g: &TrivalentGraph) -> usize {
    if !bridges(g).is_empty() {
        return 1;
    }
    let two_cut = (0..g.n_edges())
        .filter(|&e| !g.is_loop(e))
        .any(|e| !bridges_without(g, Some(e)).is_empty());
    if two_cut {
        2
    } else {
        3
    }
}

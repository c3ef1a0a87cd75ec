//! Canonical labeling of small symmetric weight matrices.
//!
//! The canonical key is the lexicographically smallest code over all vertex
//! orders, where each position contributes the vertex's invariant class
//! followed by its (complemented) weights to the earlier positions. Only
//! children whose segment is minimal among their siblings are explored, which
//! is exact because a segment depends only on the positions before it.

/// Result of a canonical labeling search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    /// Canonical code; equal codes iff isomorphic weight matrices.
    pub key: Vec<u8>,
    /// `order[i]` is the original vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Number of vertex permutations preserving the weight matrix.
    pub automorphisms: u64,
}

pub fn canonical_form(w: &[Vec<u8>]) -> Canonical {
    let n = w.len();
    let classes = invariant_classes(w);
    let mut search = Search {
        w,
        classes: &classes,
        best: None,
        best_order: Vec::new(),
        count: 0,
    };
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut prefix = vec![n as u8];
    search.descend(&mut order, &mut used, &mut prefix);
    Canonical {
        key: search.best.expect("search visits at least one leaf"),
        order: search.best_order,
        automorphisms: search.count,
    }
}

/// Ranks vertices by an isomorphism-invariant signature: diagonal weight then
/// the sorted multiset of off-diagonal weights.
fn invariant_classes(w: &[Vec<u8>]) -> Vec<u8> {
    let sigs: Vec<(u8, Vec<u8>)> = (0..w.len())
        .map(|v| {
            let mut row: Vec<u8> = (0..w.len()).filter(|&u| u != v).map(|u| w[v][u]).collect();
            row.sort_unstable_by(|a, b| b.cmp(a));
            (w[v][v], row)
        })
        .collect();
    let mut distinct = sigs.clone();
    distinct.sort();
    distinct.dedup();
    sigs.iter()
        .map(|s| distinct.binary_search(s).expect("present") as u8)
        .collect()
}

struct Search<'a> {
    w: &'a [Vec<u8>],
    classes: &'a [u8],
    best: Option<Vec<u8>>,
    best_order: Vec<usize>,
    count: u64,
}

impl Search<'_> {
    fn segment(&self, order: &[usize], v: usize) -> Vec<u8> {
        let mut seg = Vec::with_capacity(order.len() + 2);
        seg.push(self.classes[v]);
        seg.push(u8::MAX - self.w[v][v]);
        seg.extend(order.iter().map(|&u| u8::MAX - self.w[v][u]));
        seg
    }

    fn descend(&mut self, order: &mut Vec<usize>, used: &mut [bool], prefix: &mut Vec<u8>) {
        let n = self.w.len();
        if order.len() == n {
            match &self.best {
                Some(b) if prefix.as_slice() > b.as_slice() => {}
                Some(b) if prefix.as_slice() == b.as_slice() => self.count += 1,
                _ => {
                    self.best = Some(prefix.clone());
                    self.best_order = order.clone();
                    self.count = 1;
                }
            }
            return;
        }
        let candidates: Vec<(usize, Vec<u8>)> = (0..n)
            .filter(|&v| !used[v])
            .map(|v| (v, self.segment(order, v)))
            .collect();
        let min = candidates.iter().map(|(_, s)| s).min().expect("nonempty").clone();
        for (v, seg) in candidates {
            if seg != min {
                continue;
            }
            let len = prefix.len();
            prefix.extend_from_slice(&seg);
            if let Some(b) = &self.best {
                if prefix.as_slice() > &b[..prefix.len()] {
                    prefix.truncate(len);
                    continue;
                }
            }
            used[v] = true;
            order.push(v);
            self.descend(order, used, prefix);
            order.pop();
            used[v] = false;
            prefix.truncate(len);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(w: &[Vec<u8>], perm: &[usize]) -> Vec<Vec<u8>> {
        let n = w.len();
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[perm[i]][perm[j]] = w[i][j];
            }
        }
        out
    }

    #[test]
    fn key_is_invariant_under_relabeling() {
        // K4 with one doubled weight.
        let w = vec![
            vec![0, 2, 1, 1],
            vec![2, 0, 1, 1],
            vec![1, 1, 0, 1],
            vec![1, 1, 1, 0],
        ];
        let c = canonical_form(&w);
        for perm in [[1, 0, 3, 2], [3, 2, 1, 0], [2, 3, 0, 1]] {
            assert_eq!(canonical_form(&relabel(&w, &perm)).key, c.key);
        }
    }

    #[test]
    fn automorphism_counts() {
        let k4 = vec![
            vec![0, 1, 1, 1],
            vec![1, 0, 1, 1],
            vec![1, 1, 0, 1],
            vec![1, 1, 1, 0],
        ];
        assert_eq!(canonical_form(&k4).automorphisms, 24);
        let theta = vec![vec![0, 3], vec![3, 0]];
        assert_eq!(canonical_form(&theta).automorphisms, 2);
    }
}

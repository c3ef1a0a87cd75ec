//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's algorithms; library types appear only as inputs.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Complex, Zero};

pub type C = Complex<BigRational>;
/// Row-major 2×2 matrix.
pub type M = [C; 4];

pub fn c(re: i64, im: i64) -> C {
    Complex::new(BigRational::from_integer(BigInt::from(re)), BigRational::from_integer(BigInt::from(im)))
}

pub fn m_int(a: i64, b: i64, cc: i64, d: i64) -> M {
    [c(a, 0), c(b, 0), c(cc, 0), c(d, 0)]
}

pub fn mul(x: &M, y: &M) -> M {
    [
        &x[0] * &y[0] + &x[1] * &y[2],
        &x[0] * &y[1] + &x[1] * &y[3],
        &x[2] * &y[0] + &x[3] * &y[2],
        &x[2] * &y[1] + &x[3] * &y[3],
    ]
}

pub fn det(x: &M) -> C {
    &x[0] * &x[3] - &x[1] * &x[2]
}

pub fn trace(x: &M) -> C {
    &x[0] + &x[3]
}

/// Inverse of a determinant-one matrix.
pub fn inv1(x: &M) -> M {
    [x[3].clone(), -x[1].clone(), -x[2].clone(), x[0].clone()]
}

pub fn identity() -> M {
    m_int(1, 0, 0, 1)
}

/// Plain Gauss–Jordan elimination; returns the reduced rows and pivot columns.
fn reduce(mut rows: Vec<Vec<C>>, n: usize) -> (Vec<Vec<C>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let lead = rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &lead;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x = &*x - &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

pub fn rank(rows: &[Vec<C>], n: usize) -> usize {
    reduce(rows.to_vec(), n).1.len()
}

pub fn nullspace(rows: &[Vec<C>], n: usize) -> Vec<Vec<C>> {
    let (red, pivots) = reduce(rows.to_vec(), n);
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![c(0, 0); n];
            v[f] = c(1, 0);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -red[i][f].clone();
            }
            v
        })
        .collect()
}

/// Basis of `{X : X·r = l·X}`.
pub fn intertwiner_basis(l: &M, r: &M) -> Vec<M> {
    let mut rows = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            // (X r)_{ij} − (l X)_{ij}
            let mut row = vec![c(0, 0); 4];
            for k in 0..2 {
                row[2 * i + k] = &row[2 * i + k] + &r[2 * k + j];
                row[2 * k + j] = &row[2 * k + j] - &l[2 * i + k];
            }
            rows.push(row);
        }
    }
    nullspace(&rows, 4).into_iter().map(|v| [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]).collect()
}

/// Conjugacy in GL(2,C): some intertwiner is invertible. The determinant is a
/// quadratic form on the intertwiner space, so it is identically zero iff it
/// vanishes on the grid {0,1,2}^k.
pub fn conjugate(l: &M, r: &M) -> bool {
    let basis = intertwiner_basis(l, r);
    let k = basis.len();
    let mut idx = vec![0i64; k];
    loop {
        let mut x = [c(0, 0), c(0, 0), c(0, 0), c(0, 0)];
        for (b, &t) in basis.iter().zip(&idx) {
            for j in 0..4 {
                x[j] = &x[j] + &b[j] * c(t, 0);
            }
        }
        if !det(&x).is_zero() {
            return true;
        }
        let mut i = 0;
        loop {
            if i == k {
                return false;
            }
            idx[i] += 1;
            if idx[i] < 3 {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

pub fn centralizer_dim(m: &M) -> usize {
    intertwiner_basis(m, m).len() - 1
}

/// Dimension of the common centralizer of `ms` in sl(2).
pub fn joint_centralizer_dim(ms: &[M]) -> usize {
    // X = [[x, y], [z, -x]]; rows of X m − m X for every m.
    let mut rows = Vec::new();
    let basis = [m_int(1, 0, 0, -1), m_int(0, 1, 0, 0), m_int(0, 0, 1, 0)];
    for m in ms {
        let images: Vec<M> = basis
            .iter()
            .map(|b| {
                let (p, q) = (mul(b, m), mul(m, b));
                [&p[0] - &q[0], &p[1] - &q[1], &p[2] - &q[2], &p[3] - &q[3]]
            })
            .collect();
        for j in 0..4 {
            rows.push(images.iter().map(|im| im[j].clone()).collect());
        }
    }
    3 - rank(&rows, 3)
}

/// Every SL(2,Z) matrix with entries in `-r..=r`.
pub fn small_sl2z(r: i64) -> Vec<M> {
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for cc in -r..=r {
                for d in -r..=r {
                    if a * d - b * cc == 1 {
                        out.push(m_int(a, b, cc, d));
                    }
                }
            }
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

pub type Edges = Vec<(usize, usize)>;

fn normalise(edges: &[(usize, usize)], perm: &[usize]) -> Edges {
    let mut e: Edges = edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (perm[a], perm[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    e.sort_unstable();
    e
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Minimum over all vertex relabellings of the sorted edge list.
pub fn graph_key(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Edges {
    perms.iter().map(|p| normalise(edges, p)).min().expect("at least one permutation")
}

/// Flagged key: the flag is recorded by its endpoint pair, which identifies
/// it up to swapping parallel edges.
pub fn flag_key(edges: &[(usize, usize)], flag: usize, perms: &[Vec<usize>]) -> (Edges, (usize, usize)) {
    perms
        .iter()
        .map(|p| {
            let (a, b) = edges[flag];
            let (x, y) = (p[a], p[b]);
            (normalise(edges, p), (x.min(y), x.max(y)))
        })
        .min()
        .expect("at least one permutation")
}

/// All connected trivalent multigraphs of a genus, as canonical keys.
pub fn brute_force_classes(genus: usize) -> BTreeSet<Edges> {
    let n = 2 * genus - 2;
    let perms = permutations(n);
    let mut out = BTreeSet::new();
    let mut rem = vec![3usize; n];
    let mut edges = Vec::new();
    grow(&mut rem, &mut edges, &mut |e: &Edges| {
        if connected(n, e) {
            out.insert(graph_key(e, &perms));
        }
    });
    out
}

fn grow(rem: &mut [usize], edges: &mut Edges, emit: &mut impl FnMut(&Edges)) {
    let Some(v) = rem.iter().position(|&r| r > 0) else {
        emit(edges);
        return;
    };
    let start = match edges.last() {
        Some(&(a, b)) if a == v => b,
        _ => v,
    };
    for u in start..rem.len() {
        let need_ok = if u == v { rem[v] >= 2 } else { rem[u] > 0 };
        if !need_ok {
            continue;
        }
        if u == v {
            rem[v] -= 2;
        } else {
            rem[v] -= 1;
            rem[u] -= 1;
        }
        edges.push((v, u));
        grow(rem, edges, emit);
        edges.pop();
        if u == v {
            rem[v] += 2;
        } else {
            rem[v] += 1;
            rem[u] += 1;
        }
    }
}

/// Half-edge automorphisms: vertex symmetries times the independent
/// permutations of parallel edges and reversals of loops.
pub fn automorphism_count(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    let base = normalise(edges, &(0..n).collect::<Vec<_>>());
    let vertex_syms = perms.iter().filter(|p| normalise(edges, p) == base).count() as u64;
    let mut local = 1u64;
    let mut i = 0;
    while i < base.len() {
        let j = (i..base.len()).find(|&j| base[j] != base[i]).unwrap_or(base.len());
        let mult = (j - i) as u64;
        local *= (1..=mult).product::<u64>();
        if base[i].0 == base[i].1 {
            local *= 1 << mult;
        }
        i = j;
    }
    vertex_syms * local
}

/// Edge connectivity by exhaustive removal of one or two edges; trivalent
/// graphs are always separated by the three edges at a vertex.
pub fn thickness(n: usize, edges: &[(usize, usize)]) -> usize {
    let without = |skip: &[usize]| -> Edges {
        edges.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, &e)| e).collect()
    };
    for i in 0..edges.len() {
        if !connected(n, &without(&[i])) {
            return 1;
        }
    }
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if !connected(n, &without(&[i, j])) {
                return 2;
            }
        }
    }
    3
}

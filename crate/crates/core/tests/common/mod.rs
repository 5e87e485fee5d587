//! Independent oracles shared by the integration tests. None of them calls
//! into the code under test except for graph construction.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use crlab::Graph;
use rand::Rng;

/// Upper-triangle pairs in column-major order: (0,1), (0,2), (1,2), ...
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Number of isomorphism classes of graphs on `n` vertices by Burnside's
/// lemma: the average over `S_n` of `2^(cycles on unordered pairs)`.
pub fn burnside_count(n: usize) -> u64 {
    let ps = pairs(n);
    let index: HashMap<(usize, usize), usize> = ps.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut total: u64 = 0;
    let perms = permutations(n);
    for p in &perms {
        let mut seen = vec![false; ps.len()];
        let mut cycles = 0;
        for start in 0..ps.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                let (a, b) = ps[k];
                let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                k = index[&(x, y)];
            }
        }
        total += 1u64 << cycles;
    }
    total / perms.len() as u64
}

/// Connected counts from total counts (`totals[0] = 1`) by inverting the
/// Euler transform.
pub fn connected_counts(totals: &[u64]) -> Vec<u64> {
    let a: Vec<i128> = totals.iter().map(|&x| x as i128).collect();
    let n = a.len() - 1;
    let mut d = vec![0i128; n + 1];
    let mut c = vec![0i128; n + 1];
    for m in 1..=n {
        let mut s = m as i128 * a[m];
        for k in 1..m {
            s -= d[k] * a[m - k];
        }
        d[m] = s;
        let mut t = d[m];
        for (q, &cq) in c.iter().enumerate().take(m).skip(1) {
            if m % q == 0 {
                t -= q as i128 * cq;
            }
        }
        c[m] = t / m as i128;
    }
    c.into_iter().map(|x| x as u64).collect()
}

fn permute_mask(mask: u64, perm: &[usize], ps: &[(usize, usize)], index: &HashMap<(usize, usize), usize>) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let (a, b) = ps[m.trailing_zeros() as usize];
        let (x, y) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
        out |= 1 << index[&(x, y)];
        m &= m - 1;
    }
    out
}

/// Smallest upper-triangle mask over all relabelings: a brute-force
/// canonical form, usable for `n <= 7`.
pub fn min_mask(g: &Graph) -> u64 {
    let n = g.order();
    let ps = pairs(n);
    let index: HashMap<(usize, usize), usize> = ps.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mask = mask_of(g);
    permutations(n).iter().map(|p| permute_mask(mask, p, &ps, &index)).min().unwrap()
}

pub fn mask_of(g: &Graph) -> u64 {
    pairs(g.order())
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| g.has_edge(i, j))
        .fold(0, |m, (k, _)| m | 1 << k)
}

/// Isomorphism classes by labeled dedup over every mask.
pub fn brute_classes(n: usize) -> BTreeSet<u64> {
    let ps = pairs(n);
    let index: HashMap<(usize, usize), usize> = ps.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    let mut done = vec![false; 1 << ps.len()];
    for mask in 0..(1u64 << ps.len()) {
        if done[mask as usize] {
            continue;
        }
        let orbit: Vec<u64> = perms.iter().map(|p| permute_mask(mask, p, &ps, &index)).collect();
        for &o in &orbit {
            done[o as usize] = true;
        }
        classes.insert(*orbit.iter().min().unwrap());
    }
    classes
}

/// Exact color refinement without hashing: colors are interned as
/// `(round, sorted neighbor colors)` in one table shared by all graphs,
/// so ids are comparable across graphs at equal rounds.
#[derive(Default)]
pub struct Interner {
    table: HashMap<(usize, Vec<u32>), u32>,
}

impl Interner {
    pub fn rounds(&mut self, g: &Graph, rounds: usize) -> Vec<Vec<u32>> {
        let n = g.order();
        let mut out = vec![vec![0u32; n]];
        for r in 1..=rounds {
            let prev = &out[r - 1];
            let next: Vec<u32> = (0..n)
                .map(|x| {
                    let mut sig: Vec<u32> = g.neighbors(x).map(|y| prev[y]).collect();
                    sig.sort_unstable();
                    let len = self.table.len() as u32;
                    *self.table.entry((r, sig)).or_insert(len)
                })
                .collect();
            out.push(next);
        }
        out
    }

    /// Sorted multiset of round-`rounds` colors.
    pub fn invariant(&mut self, g: &Graph, rounds: usize) -> Vec<u32> {
        let mut c = self.rounds(g, rounds).pop().unwrap();
        c.sort_unstable();
        c
    }
}

/// Oracle CR-equivalence: equal order and equal round-n color multisets.
pub fn oracle_cr_equivalent(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let mut t = Interner::default();
    let n = g.order();
    t.invariant(g, n) == t.invariant(h, n)
}

/// Oracle CR-similarity: equal color sets at round `|G| + |H|`, late
/// enough for the disjoint union to be stable.
pub fn oracle_cr_similar(g: &Graph, h: &Graph) -> bool {
    let mut t = Interner::default();
    let r = g.order() + h.order();
    let a: BTreeSet<u32> = t.rounds(g, r).pop().unwrap().into_iter().collect();
    let b: BTreeSet<u32> = t.rounds(h, r).pop().unwrap().into_iter().collect();
    a == b
}

/// Number of non-backtracking walks of each length `0..=depth` from `x`.
pub fn nonbacktracking_walks(g: &Graph, x: usize, depth: usize) -> Vec<u64> {
    let n = g.order();
    // w[u][v]: walks whose last step is u -> v
    let mut w = vec![vec![0u64; n]; n];
    for y in g.neighbors(x) {
        w[x][y] = 1;
    }
    let mut counts = vec![1];
    if depth == 0 {
        return counts;
    }
    counts.push(g.degree(x) as u64);
    for _ in 2..=depth {
        let mut next = vec![vec![0u64; n]; n];
        for (u, wu) in w.iter().enumerate() {
            for v in g.neighbors(u) {
                if wu[v] == 0 {
                    continue;
                }
                for z in g.neighbors(v) {
                    if z != u {
                        next[v][z] += wu[v];
                    }
                }
            }
        }
        w = next;
        counts.push(w.iter().flatten().sum());
    }
    counts
}

/// sparse6 encoder written from the format description.
pub fn encode_sparse6(g: &Graph) -> String {
    let n = g.order();
    let mut out = vec![b':'];
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let mut k = 1;
    while (1usize << k) < n {
        k += 1;
    }
    let mut bits: Vec<u8> = Vec::new();
    let push = |bits: &mut Vec<u8>, b: u8, x: usize| {
        bits.push(b);
        for q in (0..k).rev() {
            bits.push((x >> q & 1) as u8);
        }
    };
    // edges (u, v) with u < v, sorted by v then u
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.sort_by_key(|&(u, v)| (v, u));
    let mut cur = 0usize;
    for (u, v) in edges {
        if v == cur {
            push(&mut bits, 0, u);
        } else if v == cur + 1 {
            cur = v;
            push(&mut bits, 1, u);
        } else {
            cur = v;
            push(&mut bits, 1, v);
            push(&mut bits, 0, u);
        }
    }
    let pad = (6 - bits.len() % 6) % 6;
    if k < 6 && cur + 2 == n && n == 1 << k && pad > k {
        // padding would read as an edge into vertex n - 1
        bits.push(0);
        bits.extend(std::iter::repeat_n(1, pad - 1));
    } else {
        bits.extend(std::iter::repeat_n(1, pad));
    }
    for chunk in bits.chunks(6) {
        let v = chunk.iter().fold(0u8, |a, &b| a << 1 | b);
        out.push(v + 63);
    }
    String::from_utf8(out).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n).unwrap();
    for (i, j) in pairs(n) {
        if rng.random_bool(p) {
            g.add_edge(i, j).unwrap();
        }
    }
    g
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A random 2-lift: every edge is either kept parallel or crossed between
/// the two copies. Lifts cover the base graph, so they are CR-similar to it.
pub fn random_lift<R: Rng>(rng: &mut R, g: &Graph) -> Graph {
    let n = g.order();
    let mut h = Graph::new(2 * n).unwrap();
    for (u, v) in g.edges() {
        if rng.random_bool(0.5) {
            h.add_edge(u, v).unwrap();
            h.add_edge(u + n, v + n).unwrap();
        } else {
            h.add_edge(u, v + n).unwrap();
            h.add_edge(u + n, v).unwrap();
        }
    }
    h
}

//! Two-dimensional Weisfeiler-Leman refinement on ordered vertex pairs.
//!
//! Pair `(u, v)` starts with its atomic type (equal, adjacent, or
//! non-adjacent); each round recolors it by its previous color together
//! with the multiset of `(color(u, w), color(w, v))` over all vertices `w`.
//! Diagonal pairs are included.

use crate::digest::{Digest, Hasher};
use crate::graph::Graph;
use crate::refine::{first_occurrence_labels, ColorId};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wl2Invariant {
    pub order: usize,
    /// Stabilization round at which the colors were read.
    pub rounds: usize,
    /// Sorted, `order * order` entries.
    pub colors: Vec<ColorId>,
}

impl Wl2Invariant {
    pub fn fingerprint(&self) -> Digest {
        let mut h = Hasher::new("crlab.wl2.invariant");
        h.u64(self.order as u64).u64(self.rounds as u64);
        for c in &self.colors {
            h.digest(&c.0);
        }
        h.finish()
    }
}

fn atomic(g: &Graph, u: usize, v: usize) -> u8 {
    if u == v {
        0
    } else if g.has_edge(u, v) {
        1
    } else {
        2
    }
}

fn initial(g: &Graph) -> Vec<ColorId> {
    let atoms: Vec<ColorId> = (0..3u64)
        .map(|t| {
            let mut h = Hasher::new("crlab.wl2.atom");
            h.u64(t);
            ColorId(h.finish())
        })
        .collect();
    let n = g.order();
    (0..n * n).map(|p| atoms[atomic(g, p / n, p % n) as usize]).collect()
}

fn step(n: usize, prev: &[ColorId]) -> Vec<ColorId> {
    let mut pairs: Vec<(ColorId, ColorId)> = Vec::with_capacity(n);
    (0..n * n)
        .map(|p| {
            let (u, v) = (p / n, p % n);
            pairs.clear();
            pairs.extend((0..n).map(|w| (prev[u * n + w], prev[w * n + v])));
            pairs.sort_unstable();
            let mut h = Hasher::new("crlab.wl2.step");
            h.digest(&prev[p].0);
            for (a, b) in &pairs {
                h.digest(&a.0).digest(&b.0);
            }
            ColorId(h.finish())
        })
        .collect()
}

/// Pair colorings for rounds `0..=R`, `R` the first round whose partition
/// equals the previous one. Entry `u * n + v` is the color of `(u, v)`.
pub fn wl2_refine_to_stable(g: &Graph) -> Vec<Vec<ColorId>> {
    let n = g.order();
    let mut rounds = vec![initial(g)];
    let mut prev_part = first_occurrence_labels(&rounds[0]);
    loop {
        let next = step(n, rounds.last().expect("round 0 exists"));
        let part = first_occurrence_labels(&next);
        rounds.push(next);
        if part == prev_part {
            return rounds;
        }
        prev_part = part;
    }
}

/// `wl(G)`, read at the stabilization round. Equivalent graphs have equal
/// color multisets at every round, hence stabilize at the same round.
pub fn wl2_invariant(g: &Graph) -> Wl2Invariant {
    let mut rounds = wl2_refine_to_stable(g);
    let r = rounds.len() - 1;
    let mut colors = rounds.pop().unwrap_or_default();
    colors.sort_unstable();
    Wl2Invariant { order: g.order(), rounds: r, colors }
}

/// Digest-mode 2-WL equivalence.
pub fn wl2_equivalent(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && wl2_invariant(g) == wl2_invariant(h)
}

/// Old pair color and the sorted multiset of (c(u,w), c(w,v)).
type PairSignature = (u32, Vec<(u32, u32)>);

/// 2-WL equivalence with colors renamed synchronously on both graphs
/// after each round; no hashing.
pub fn wl2_equivalent_exact(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let n = g.order();
    let mut colors: [Vec<u32>; 2] = [
        (0..n * n).map(|p| atomic(g, p / n, p % n) as u32).collect(),
        (0..n * n).map(|p| atomic(h, p / n, p % n) as u32).collect(),
    ];
    let count = |c: &[Vec<u32>; 2]| {
        let mut all: Vec<u32> = c.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    let mut classes = count(&colors);
    loop {
        let sigs: Vec<Vec<PairSignature>> = colors
            .iter()
            .map(|c| {
                (0..n * n)
                    .map(|p| {
                        let (u, v) = (p / n, p % n);
                        let mut m: Vec<(u32, u32)> =
                            (0..n).map(|w| (c[u * n + w], c[w * n + v])).collect();
                        m.sort_unstable();
                        (c[p], m)
                    })
                    .collect()
            })
            .collect();
        let mut distinct: Vec<&(u32, Vec<(u32, u32)>)> = sigs.iter().flatten().collect();
        distinct.sort();
        distinct.dedup();
        for (side, s) in sigs.iter().enumerate() {
            colors[side] = s
                .iter()
                .map(|x| distinct.binary_search(&x).expect("signature present") as u32)
                .collect();
        }
        let now = count(&colors);
        if now == classes {
            break;
        }
        classes = now;
    }
    let mut a = colors[0].clone();
    let mut b = colors[1].clone();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

//! Color refinement (1-dimensional Weisfeiler-Leman).
//!
//! Two interchangeable representations of the colors `C^r_G(x)` live here:
//!
//! * **digest mode** names each color by a 128-bit digest of its content:
//!   the round-0 color is a fixed atom, and the round-`r+1` color of `x` is
//!   the digest of the sorted digests of its neighbors' round-`r` colors.
//!   Colors are comparable across graphs and runs with no shared state.
//! * **exact mode** ([`exact_joint_refine`]) refines a batch of graphs
//!   together, renaming colors synchronously with small integers after
//!   every round. No hashing is involved, so it is the ground truth every
//!   digest-mode comparison is checked against.

mod exact;

use thiserror::Error;

pub use exact::{
    cr_equivalent_exact, cr_similar, exact_joint_refine, ordered_stable_partition,
    stable_intersect, JointColoring, JOINT_BATCH_CAP,
};

use crate::digest::{Digest, Hasher};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefineError {
    #[error("joint refinement batch of total order {0} exceeds {JOINT_BATCH_CAP}")]
    BatchOverflow(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
}

/// Content-addressed name of a color value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorId(pub Digest);

impl std::fmt::Debug for ColorId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ColorId({:?})", self.0)
    }
}

impl std::fmt::Display for ColorId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl ColorId {
    /// The universal round-0 color.
    pub fn initial() -> ColorId {
        ColorId(Hasher::new("crlab.cr.init").finish())
    }

    /// The color whose value is the multiset `children`.
    pub fn of_multiset(children: &mut [ColorId]) -> ColorId {
        children.sort_unstable();
        let mut h = Hasher::new("crlab.cr.mset");
        h.u64(children.len() as u64);
        for c in children.iter() {
            h.digest(&c.0);
        }
        ColorId(h.finish())
    }
}

/// The coloring `C^r_G` of one round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub round: usize,
    pub colors: Vec<ColorId>,
}

impl Coloring {
    /// Class label per vertex, numbered by first occurrence.
    pub fn partition(&self) -> Vec<usize> {
        first_occurrence_labels(&self.colors)
    }

    pub fn class_count(&self) -> usize {
        self.partition().iter().max().map_or(0, |m| m + 1)
    }
}

pub(crate) fn first_occurrence_labels<T: Ord + Copy>(values: &[T]) -> Vec<usize> {
    let mut seen: std::collections::BTreeMap<T, usize> = std::collections::BTreeMap::new();
    values
        .iter()
        .map(|v| {
            let next = seen.len();
            *seen.entry(*v).or_insert(next)
        })
        .collect()
}

fn step(g: &Graph, prev: &[ColorId]) -> Vec<ColorId> {
    let mut buf = Vec::with_capacity(g.order());
    (0..g.order())
        .map(|x| {
            buf.clear();
            buf.extend(g.neighbors(x).map(|y| prev[y]));
            ColorId::of_multiset(&mut buf)
        })
        .collect()
}

/// Colorings `C^0 .. C^rounds`.
pub fn refine_rounds(g: &Graph, rounds: usize) -> Vec<Coloring> {
    let mut out = vec![Coloring { round: 0, colors: vec![ColorId::initial(); g.order()] }];
    for r in 1..=rounds {
        let colors = step(g, &out[r - 1].colors);
        out.push(Coloring { round: r, colors });
    }
    out
}

/// Colorings of rounds `0..=R`, where `R` is the first round whose
/// partition equals the partition of round `R - 1`. Always `R <= order`
/// for graphs with at least one vertex.
pub fn refine_to_stable(g: &Graph) -> Vec<Coloring> {
    let mut out = vec![Coloring { round: 0, colors: vec![ColorId::initial(); g.order()] }];
    let mut prev_part = out[0].partition();
    loop {
        let r = out.len();
        let colors = step(g, &out[r - 1].colors);
        let c = Coloring { round: r, colors };
        let part = c.partition();
        out.push(c);
        if part == prev_part {
            return out;
        }
        prev_part = part;
    }
}

pub fn stabilization_round(g: &Graph) -> usize {
    refine_to_stable(g).len() - 1
}

/// The invariant `cor(G)`: the multiset of vertex colors, read at a fixed
/// round.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrInvariant {
    pub order: usize,
    pub rounds: usize,
    /// Sorted.
    pub colors: Vec<ColorId>,
}

impl CrInvariant {
    pub fn fingerprint(&self) -> Digest {
        let mut h = Hasher::new("crlab.cr.invariant");
        h.u64(self.order as u64).u64(self.rounds as u64);
        for c in &self.colors {
            h.digest(&c.0);
        }
        h.finish()
    }
}

/// `cor(G)` read at round `order`. Round-`n` colors determine all earlier
/// rounds, and two `n`-vertex graphs that color refinement distinguishes
/// at all are distinguished by round `n`.
pub fn cr_invariant(g: &Graph) -> CrInvariant {
    let n = g.order();
    cr_invariant_at(g, n)
}

pub fn cr_invariant_at(g: &Graph, rounds: usize) -> CrInvariant {
    let mut colors = refine_rounds(g, rounds).pop().map(|c| c.colors).unwrap_or_default();
    colors.sort_unstable();
    CrInvariant { order: g.order(), rounds, colors }
}

/// Digest-mode CR-equivalence.
pub fn cr_equivalent(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && cr_invariant(g) == cr_invariant(h)
}

/// The round-2 color `C^2_G(x)`, the multiset of neighbor degrees.
pub fn iterated_degree(g: &Graph, x: usize) -> Result<ColorId, RefineError> {
    if x >= g.order() {
        return Err(RefineError::VertexOutOfRange { vertex: x, order: g.order() });
    }
    Ok(refine_rounds(g, 2)[2].colors[x])
}

/// `C^2_G(x)` for every vertex at once.
pub fn iterated_degrees(g: &Graph) -> Vec<ColorId> {
    refine_rounds(g, 2).pop().map(|c| c.colors).unwrap_or_default()
}

use std::collections::BTreeSet;

use super::RefineError;
use crate::graph::{Graph, VertexSet};

/// Largest total order accepted by one joint refinement.
pub const JOINT_BATCH_CAP: usize = 64;

/// Stable colorings of a batch of graphs with colors named by small
/// integers shared across the whole batch.
///
/// Round `r + 1` colors are ranks of the sorted neighbor-color lists among
/// all distinct lists occurring in the batch, so equal values get equal
/// names on every graph of the batch.
#[derive(Debug, Clone)]
pub struct JointColoring {
    offsets: Vec<usize>,
    rounds: Vec<Vec<u32>>,
}

impl JointColoring {
    pub fn graph_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// First round whose joint partition equals the previous one.
    pub fn stable_round(&self) -> usize {
        self.rounds.len() - 1
    }

    fn range(&self, graph: usize) -> std::ops::Range<usize> {
        self.offsets[graph]..self.offsets[graph + 1]
    }

    /// Colors of `graph` at `round`. Rounds beyond stabilization reuse the
    /// stable round, whose partition they share.
    pub fn colors_at(&self, graph: usize, round: usize) -> &[u32] {
        let r = round.min(self.stable_round());
        &self.rounds[r][self.range(graph)]
    }

    pub fn color(&self, graph: usize, vertex: usize, round: usize) -> u32 {
        self.colors_at(graph, round)[vertex]
    }

    pub fn stable_colors(&self, graph: usize) -> &[u32] {
        self.colors_at(graph, self.stable_round())
    }

    /// Sorted multiset of stable colors of `graph`.
    pub fn multiset(&self, graph: usize) -> Vec<u32> {
        let mut m = self.stable_colors(graph).to_vec();
        m.sort_unstable();
        m
    }

    pub fn color_set(&self, graph: usize) -> BTreeSet<u32> {
        self.stable_colors(graph).iter().copied().collect()
    }

    pub fn class_count(&self) -> usize {
        let last = &self.rounds[self.stable_round()];
        last.iter().collect::<BTreeSet<_>>().len()
    }
}

/// Refines the disjoint union of `gs` with synchronous renaming until the
/// joint partition stabilizes.
pub fn exact_joint_refine(gs: &[Graph]) -> Result<JointColoring, RefineError> {
    let total: usize = gs.iter().map(Graph::order).sum();
    if total > JOINT_BATCH_CAP {
        return Err(RefineError::BatchOverflow(total));
    }
    let mut offsets = vec![0];
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(total);
    for g in gs {
        let base = *offsets.last().unwrap_or(&0);
        for v in 0..g.order() {
            adj.push(g.neighbors(v).map(|w| base + w).collect());
        }
        offsets.push(base + g.order());
    }
    let rounds = refine_lists(&adj);
    Ok(JointColoring { offsets, rounds })
}

fn refine_lists(adj: &[Vec<usize>]) -> Vec<Vec<u32>> {
    let n = adj.len();
    let mut rounds = vec![vec![0u32; n]];
    let mut classes = usize::from(n > 0);
    loop {
        let prev = rounds.last().expect("round 0 exists");
        let sigs: Vec<Vec<u32>> = adj
            .iter()
            .map(|nbrs| {
                let mut s: Vec<u32> = nbrs.iter().map(|&w| prev[w]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        let mut distinct: Vec<&Vec<u32>> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).expect("signature present") as u32)
            .collect();
        rounds.push(next);
        // Each round refines the previous one, so an unchanged class count
        // means an unchanged partition.
        if distinct.len() == classes {
            return rounds;
        }
        classes = distinct.len();
    }
}

/// Exact CR-equivalence of two graphs.
pub fn cr_equivalent_exact(g: &Graph, h: &Graph) -> Result<bool, RefineError> {
    if g.order() != h.order() {
        return Ok(false);
    }
    let joint = exact_joint_refine(&[g.clone(), h.clone()])?;
    Ok(joint.multiset(0) == joint.multiset(1))
}

/// CR-similarity: the sets of stable colors of `g` and `h` coincide.
pub fn cr_similar(g: &Graph, h: &Graph) -> Result<bool, RefineError> {
    let joint = exact_joint_refine(&[g.clone(), h.clone()])?;
    Ok(joint.color_set(0) == joint.color_set(1))
}

/// Whether `g` and `h` share at least one stable color.
pub fn stable_intersect(g: &Graph, h: &Graph) -> Result<bool, RefineError> {
    let joint = exact_joint_refine(&[g.clone(), h.clone()])?;
    Ok(!joint.color_set(0).is_disjoint(&joint.color_set(1)))
}

/// Stable color classes of a single graph, ordered by their exact color
/// names. The order depends only on the isomorphism type, so it can drive
/// canonical labeling.
pub fn ordered_stable_partition(g: &Graph) -> Vec<VertexSet> {
    let adj: Vec<Vec<usize>> = (0..g.order()).map(|v| g.neighbors(v).collect()).collect();
    let rounds = refine_lists(&adj);
    let stable = rounds.last().expect("at least one round");
    let k = stable.iter().max().map_or(0, |&m| m as usize + 1);
    let mut cells = vec![VertexSet::EMPTY; k];
    for (v, &c) in stable.iter().enumerate() {
        cells[c as usize].insert(v);
    }
    cells
}

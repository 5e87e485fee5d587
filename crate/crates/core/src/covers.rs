//! Truncated universal covers.
//!
//! The depth-`r` unfolding of `G` at `x` has one node per non-backtracking
//! walk of length at most `r` starting at `x`; a walk's parent is the walk
//! with its last step removed. Two roots have equal round-`r` refinement
//! colors exactly when their depth-`r` unfoldings are isomorphic as rooted
//! trees, which [`check_color_cover`] evaluates from both sides.

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::refine::{exact_joint_refine, RefineError};

pub const DEFAULT_NODE_GUARD: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("unfolding exceeds the node guard of {limit} at depth {depth}")]
    NodeGuard { depth: usize, limit: usize },
    #[error(transparent)]
    Refine(#[from] RefineError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnfoldNode {
    /// Endpoint of the walk in the base graph.
    pub vertex: usize,
    pub parent: Option<usize>,
    pub depth: usize,
    children: (usize, usize),
}

/// Nodes are stored in breadth-first order, so the children of a node
/// form a contiguous index range after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnfoldingTree {
    depth: usize,
    nodes: Vec<UnfoldNode>,
}

impl UnfoldingTree {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn root_vertex(&self) -> usize {
        self.nodes[0].vertex
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[UnfoldNode] {
        &self.nodes
    }

    pub fn children(&self, node: usize) -> std::ops::Range<usize> {
        let (a, b) = self.nodes[node].children;
        a..b
    }

    /// Checks the covering structure against `g`: the root's children map
    /// bijectively onto `N(x)`, and every other node's children onto the
    /// neighbors of its endpoint minus the predecessor.
    pub fn is_local_cover_of(&self, g: &Graph) -> bool {
        self.nodes.iter().enumerate().all(|(i, node)| {
            if node.depth == self.depth {
                return self.children(i).is_empty();
            }
            let mut want = g.neighborhood(node.vertex).0;
            if let Some(p) = node.parent {
                want &= !(1u64 << self.nodes[p].vertex);
            }
            let mut got = 0u64;
            for c in self.children(i) {
                let bit = 1u64 << self.nodes[c].vertex;
                if got & bit != 0 || self.nodes[c].parent != Some(i) {
                    return false;
                }
                got |= bit;
            }
            got == want
        })
    }

    /// The tree as a plain graph; node `i` becomes vertex `i`.
    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        let mut g = Graph::new(self.nodes.len())?;
        for (i, node) in self.nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                g.add_edge(p, i)?;
            }
        }
        Ok(g)
    }
}

pub fn unfold(g: &Graph, x: usize, depth: usize) -> Result<UnfoldingTree, CoverError> {
    unfold_with_guard(g, x, depth, DEFAULT_NODE_GUARD)
}

pub fn unfold_with_guard(
    g: &Graph,
    x: usize,
    depth: usize,
    guard: usize,
) -> Result<UnfoldingTree, CoverError> {
    if x >= g.order() {
        return Err(CoverError::VertexOutOfRange { vertex: x, order: g.order() });
    }
    if guard == 0 {
        return Err(CoverError::NodeGuard { depth: 0, limit: guard });
    }
    let mut nodes = vec![UnfoldNode { vertex: x, parent: None, depth: 0, children: (0, 0) }];
    let mut level = 0..1;
    for d in 1..=depth {
        let start = nodes.len();
        for i in level.clone() {
            let mut next = g.neighborhood(nodes[i].vertex).0;
            if let Some(p) = nodes[i].parent {
                next &= !(1u64 << nodes[p].vertex);
            }
            if nodes.len() + next.count_ones() as usize > guard {
                return Err(CoverError::NodeGuard { depth: d, limit: guard });
            }
            let first = nodes.len();
            for w in crate::graph::VertexSet(next).iter() {
                nodes.push(UnfoldNode { vertex: w, parent: Some(i), depth: d, children: (0, 0) });
            }
            nodes[i].children = (first, nodes.len());
        }
        level = start..nodes.len();
        if level.is_empty() {
            break;
        }
    }
    Ok(UnfoldingTree { depth, nodes })
}

/// Canonical code of a rooted tree: `(` + sorted child codes + `)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AhuCode(pub Vec<u8>);

impl std::fmt::Display for AhuCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

pub fn ahu_code(t: &UnfoldingTree) -> AhuCode {
    let n = t.node_count();
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    for i in (0..n).rev() {
        let mut kids: Vec<Vec<u8>> = t.children(i).map(|c| std::mem::take(&mut codes[c])).collect();
        kids.sort_unstable();
        let len = 2 + kids.iter().map(Vec::len).sum::<usize>();
        let mut code = Vec::with_capacity(len);
        code.push(b'(');
        for k in kids {
            code.extend_from_slice(&k);
        }
        code.push(b')');
        codes[i] = code;
    }
    AhuCode(std::mem::take(&mut codes[0]))
}

/// Evaluates both sides of the color/unfolding correspondence:
/// `(C^r_G(x) == C^r_H(y), U^r_{G,x} ≅ U^r_{H,y})`.
pub fn check_color_cover(
    g: &Graph,
    x: usize,
    h: &Graph,
    y: usize,
    depth: usize,
) -> Result<(bool, bool), CoverError> {
    check_color_cover_with_guard(g, x, h, y, depth, DEFAULT_NODE_GUARD)
}

pub fn check_color_cover_with_guard(
    g: &Graph,
    x: usize,
    h: &Graph,
    y: usize,
    depth: usize,
    guard: usize,
) -> Result<(bool, bool), CoverError> {
    let tg = unfold_with_guard(g, x, depth, guard)?;
    let th = unfold_with_guard(h, y, depth, guard)?;
    let joint = exact_joint_refine(&[g.clone(), h.clone()])?;
    let colors_equal = joint.color(0, x, depth) == joint.color(1, y, depth);
    Ok((colors_equal, ahu_code(&tg) == ahu_code(&th)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> Graph {
        Graph::named(name).unwrap()
    }

    #[test]
    fn c3_depth_two_is_a_centered_p5() {
        let t = unfold(&g("C3"), 0, 2).unwrap();
        assert_eq!(t.node_count(), 5);
        assert!(t.is_local_cover_of(&g("C3")));
        let as_graph = t.to_graph().unwrap();
        assert_eq!(as_graph.canonical_form(), g("P5").canonical_form());
        assert_eq!(t.children(0).len(), 2);
    }

    #[test]
    fn depth_zero_is_a_single_root() {
        let t = unfold(&g("K4"), 2, 0).unwrap();
        assert_eq!(t.node_count(), 1);
        assert_eq!(ahu_code(&t).0, b"()");
    }

    #[test]
    fn trees_unfold_to_themselves() {
        let star = g("S3");
        let t = unfold(&star, 1, star.diameter().unwrap()).unwrap();
        assert_eq!(t.to_graph().unwrap().canonical_form(), star.canonical_form());
        let p5 = g("P5");
        let t = unfold(&p5, 0, 10).unwrap();
        assert_eq!(t.node_count(), 5);
    }

    #[test]
    fn ahu_ignores_child_order() {
        let cherry = unfold(&g("P3"), 1, 1).unwrap();
        let code = ahu_code(&cherry);
        assert_eq!(code.0, b"(()())");
        let other = unfold(&g("P3").permute(&[2, 1, 0]).unwrap(), 1, 1).unwrap();
        assert_eq!(ahu_code(&other), code);
    }

    #[test]
    fn c3_and_p5_endpoint_codes_differ() {
        let a = unfold(&g("C3"), 0, 2).unwrap();
        let b = unfold(&g("P5"), 0, 2).unwrap();
        assert_eq!(b.node_count(), 3);
        assert_ne!(ahu_code(&a), ahu_code(&b));
    }

    #[test]
    fn color_cover_examples() {
        for r in 0..6 {
            assert_eq!(check_color_cover(&g("C6"), 0, &g("2C3"), 4, r).unwrap(), (true, true));
        }
        assert_eq!(check_color_cover(&g("P5"), 0, &g("C6"), 0, 2).unwrap(), (false, false));
        let b = Graph::bowtie();
        assert_eq!(check_color_cover(&b, 2, &b, 2, 3).unwrap(), (true, true));
    }

    #[test]
    fn guard_is_reported() {
        let err = unfold_with_guard(&g("K5"), 0, 8, 1000).unwrap_err();
        assert!(matches!(err, CoverError::NodeGuard { limit: 1000, .. }));
        assert!(matches!(unfold(&g("K3"), 3, 1), Err(CoverError::VertexOutOfRange { .. })));
    }
}

use super::{Graph, VertexSet};

/// Decomposition of a graph into blocks (maximal biconnected subgraphs)
/// and cut vertices.
///
/// Isolated vertices form singleton blocks. For a disconnected graph the
/// incidence relation is a forest with one tree per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    /// `(block index, cut vertex)` pairs with the cut vertex in the block.
    pub incidence: Vec<(usize, usize)>,
    /// Indices of blocks containing at most one cut vertex.
    pub leaf_blocks: Vec<usize>,
}

struct Dfs<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    edge_stack: Vec<(usize, usize)>,
    blocks: Vec<VertexSet>,
    cuts: VertexSet,
}

impl Dfs<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.timer += 1;
        self.disc[u] = self.timer;
        self.low[u] = self.timer;
        let mut children = 0;
        for w in self.g.neighbors(u) {
            if self.disc[w] == 0 {
                children += 1;
                self.edge_stack.push((u, w));
                self.visit(w, Some(u));
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    if parent.is_some() || children > 1 {
                        self.cuts.insert(u);
                    }
                    let mut block = VertexSet::EMPTY;
                    while let Some((a, b)) = self.edge_stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if Some(w) != parent && self.disc[w] < self.disc[u] {
                self.edge_stack.push((u, w));
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }
}

impl BlockCutTree {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut dfs = Dfs {
            g,
            disc: vec![0; n],
            low: vec![0; n],
            timer: 0,
            edge_stack: Vec::new(),
            blocks: Vec::new(),
            cuts: VertexSet::EMPTY,
        };
        for v in 0..n {
            if dfs.disc[v] == 0 {
                if g.degree(v) == 0 {
                    dfs.disc[v] = usize::MAX;
                    dfs.blocks.push(VertexSet::singleton(v));
                } else {
                    dfs.visit(v, None);
                }
            }
        }
        let mut blocks = dfs.blocks;
        blocks.sort_by_key(|b| (b.first(), b.0));
        let cut_vertices = dfs.cuts;
        let mut incidence = Vec::new();
        let mut leaf_blocks = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            let cuts_in = VertexSet(b.0 & cut_vertices.0);
            for c in cuts_in.iter() {
                incidence.push((i, c));
            }
            if cuts_in.len() <= 1 {
                leaf_blocks.push(i);
            }
        }
        BlockCutTree { blocks, cut_vertices, incidence, leaf_blocks }
    }

    /// Number of connected pieces of the incidence structure (blocks and
    /// cut vertices as nodes).
    pub fn forest_components(&self) -> usize {
        let nb = self.blocks.len();
        let mut parent: Vec<usize> = (0..nb + 64).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(b, c) in &self.incidence {
            let (x, y) = (find(&mut parent, b), find(&mut parent, nb + c));
            parent[x] = y;
        }
        let mut roots: Vec<usize> = (0..nb)
            .chain(self.cut_vertices.iter().map(|c| nb + c))
            .map(|x| find(&mut parent, x))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// True when the incidence structure is acyclic and connected.
    pub fn is_tree(&self) -> bool {
        let nodes = self.blocks.len() + self.cut_vertices.len();
        self.incidence.len() + 1 == nodes && self.forest_components() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_cut_vertices(g: &Graph) -> VertexSet {
        let base = g.components().len();
        (0..g.order())
            .filter(|&v| g.delete_vertex(v).unwrap().components().len() > base)
            .collect()
    }

    #[test]
    fn p3() {
        let t = Graph::path(3).unwrap().block_cut_tree();
        assert_eq!(t.blocks.len(), 2);
        assert_eq!(t.cut_vertices, VertexSet::singleton(1));
        assert!(t.is_tree());
        assert_eq!(t.leaf_blocks.len(), 2);
    }

    #[test]
    fn c6_is_one_block() {
        let t = Graph::cycle(6).unwrap().block_cut_tree();
        assert_eq!(t.blocks, vec![VertexSet::full(6)]);
        assert!(t.cut_vertices.is_empty());
        assert!(t.is_tree());
    }

    #[test]
    fn bowtie_matches_brute_force() {
        let g = Graph::bowtie();
        let t = g.block_cut_tree();
        assert_eq!(t.blocks.len(), 2);
        assert_eq!(t.cut_vertices, brute_cut_vertices(&g));
        assert_eq!(t.cut_vertices, VertexSet::singleton(2));
    }

    #[test]
    fn root_with_single_child_is_not_cut() {
        // star rooted at a leaf: DFS root 0 is the center here
        let g = Graph::from_edges(4, &[(1, 0), (0, 2), (0, 3)]).unwrap();
        assert_eq!(g.block_cut_tree().cut_vertices, VertexSet::singleton(0));
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.block_cut_tree().cut_vertices, VertexSet::singleton(1));
    }

    #[test]
    fn isolated_vertices_are_blocks() {
        let g = Graph::from_edges(4, &[(0, 1)]).unwrap();
        let t = g.block_cut_tree();
        assert_eq!(t.blocks.len(), 3);
        assert_eq!(t.forest_components(), 3);
        assert!(!t.is_tree());
    }
}

//! Finite simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` bit row per vertex, so neighborhoods,
//! degrees and relabelings are plain bit operations. Every other module in
//! the crate consumes this type.

mod blockcut;
mod canon;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub use blockcut::BlockCutTree;
pub use canon::{canonical_labeling, CanonicalForm};

/// Hard cap on the number of vertices.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order {0} outside the supported range 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} not present")]
    MissingEdge(usize, usize),
    #[error("disjoint union of total order {0} exceeds {MAX_ORDER}")]
    UnionOverflow(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("operation undefined on the order-0 graph")]
    Empty,
    #[error("invalid permutation of length {len} for order {order}")]
    InvalidPermutation { len: usize, order: usize },
}

/// A set of vertices of a graph with at most 64 vertices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over set bits, lowest first.
#[derive(Debug, Clone)]
pub struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Bits {}

/// A finite simple undirected graph.
///
/// Graphs are immutable once handed out; the mutating helpers are only
/// used while building. Order 0 is reachable only by deleting the vertex
/// of `K1`, which keeps decks of `K1` well defined.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    order: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.order)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, ")")
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices, `1 <= n <= 64`.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(n));
        }
        Ok(Graph { order: n, rows: vec![0; n] })
    }

    pub(crate) fn with_order_unchecked(n: usize) -> Self {
        debug_assert!(n <= MAX_ORDER);
        Graph { order: n, rows: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from the adjacency bits of the upper triangle in
    /// column-major order `x(0,1), x(0,2), x(1,2), x(0,3), ...`; bit `k` of
    /// `mask` is the `k`-th pair. Only usable for `n <= 11`.
    pub fn from_upper_triangle(n: usize, mask: u64) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> k & 1 == 1 {
                    g.rows[i] |= 1 << j;
                    g.rows[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.order {
            Err(GraphError::VertexOutOfRange { vertex: v, order: self.order })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.rows[u] >> v & 1 == 1
    }

    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.rows[v])
    }

    pub fn neighborhood(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| {
            let above = if u >= 63 { 0 } else { u64::MAX << (u + 1) };
            Bits(self.rows[u] & above).map(move |v| (u, v))
        })
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let n = self.order;
        let invalid = GraphError::InvalidPermutation { len: perm.len(), order: n };
        if perm.len() != n {
            return Err(invalid);
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= n || seen >> p & 1 == 1 {
                return Err(invalid);
            }
            seen |= 1 << p;
        }
        let mut out = Graph::with_order_unchecked(n);
        for u in 0..n {
            let mut row = 0u64;
            for v in self.neighbors(u) {
                row |= 1 << perm[v];
            }
            out.rows[perm[u]] = row;
        }
        Ok(out)
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.order).0;
        let rows = (0..self.order)
            .map(|v| !self.rows[v] & full & !(1u64 << v))
            .collect();
        Graph { order: self.order, rows }
    }

    /// The vertex-deleted subgraph `G \ v`. Remaining vertices keep their
    /// relative order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let low = (1u64 << v) - 1;
        let squeeze = |row: u64| (row & low) | ((row >> 1) & !low);
        let rows = (0..self.order)
            .filter(|&u| u != v)
            .map(|u| squeeze(self.rows[u]))
            .collect();
        Ok(Graph { order: self.order - 1, rows })
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let mut g = self.clone();
        g.rows[u] &= !(1 << v);
        g.rows[v] &= !(1 << u);
        Ok(g)
    }

    /// Subgraph induced on `set`, vertices renumbered in increasing order.
    pub fn induced(&self, set: VertexSet) -> Graph {
        let verts = set.to_vec();
        let mut out = Graph::with_order_unchecked(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &w) in verts.iter().enumerate() {
                if self.has_edge(u, w) {
                    out.rows[i] |= 1 << j;
                }
            }
        }
        out
    }

    /// Vertex-disjoint union; the vertices of `parts[i]` follow those of
    /// `parts[i - 1]`.
    pub fn disjoint_union(parts: &[Graph]) -> Result<Graph, GraphError> {
        let total: usize = parts.iter().map(Graph::order).sum();
        if total > MAX_ORDER {
            return Err(GraphError::UnionOverflow(total));
        }
        if total == 0 {
            return Err(GraphError::Empty);
        }
        let mut out = Graph::with_order_unchecked(total);
        let mut offset = 0;
        for part in parts {
            for v in 0..part.order {
                out.rows[offset + v] = part.rows[v] << offset;
            }
            offset += part.order;
        }
        Ok(out)
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices().0;
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let comp = self.reach(start);
            left &= !comp.0;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start`.
    pub fn reach(&self, start: usize) -> VertexSet {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in Bits(frontier) {
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        VertexSet(seen)
    }

    /// True for graphs with exactly one component. The order-0 graph is
    /// not connected.
    pub fn is_connected(&self) -> bool {
        self.order > 0 && self.reach(0).len() == self.order
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest shortest-path distance between two vertices.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        if self.order == 0 {
            return Err(GraphError::Empty);
        }
        let mut best = 0;
        for s in 0..self.order {
            for d in self.distances(s) {
                best = best.max(d.ok_or(GraphError::Disconnected)?);
            }
        }
        Ok(best)
    }

    pub fn block_cut_tree(&self) -> BlockCutTree {
        BlockCutTree::new(self)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        CanonicalForm::of(self)
    }

    // Named families used throughout tests and the CLI.

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        Ok(Graph::new(n)?.complement())
    }

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::new(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v)?;
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::path(n)?;
        if n >= 3 {
            g.add_edge(n - 1, 0)?;
        }
        Ok(g)
    }

    pub fn star(leaves: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::new(leaves + 1)?;
        for v in 1..=leaves {
            g.add_edge(0, v)?;
        }
        Ok(g)
    }

    /// Two triangles sharing vertex 2.
    pub fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
            .expect("bowtie is a valid graph")
    }

    /// `copies` disjoint copies of `g`.
    pub fn repeat(g: &Graph, copies: usize) -> Result<Graph, GraphError> {
        Graph::disjoint_union(&vec![g.clone(); copies])
    }

    /// Parses the built-in names `K<n>`, `C<n>`, `P<n>`, `S<n>` (star with
    /// `n` leaves), `E<n>` (edgeless), `bowtie`, and multiples such as
    /// `2C3`.
    pub fn named(name: &str) -> Option<Graph> {
        if name.eq_ignore_ascii_case("bowtie") {
            return Some(Graph::bowtie());
        }
        let digits = name.bytes().take_while(u8::is_ascii_digit).count();
        let (copies, rest) = name.split_at(digits);
        let copies: usize = if copies.is_empty() { 1 } else { copies.parse().ok()? };
        if copies == 0 {
            return None;
        }
        let mut chars = rest.chars();
        let family = chars.next()?;
        let size: usize = chars.as_str().parse().ok()?;
        let base = match family {
            'K' => Graph::complete(size),
            'C' if size >= 3 => Graph::cycle(size),
            'P' => Graph::path(size),
            'S' => Graph::star(size),
            'E' => Graph::new(size),
            _ => return None,
        }
        .ok()?;
        Graph::repeat(&base, copies).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_degrees(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn components_examples() {
        let two_c3 = Graph::named("2C3").unwrap();
        let comps = two_c3.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 3));
        assert_eq!(Graph::cycle(6).unwrap().components().len(), 1);
        let e3 = Graph::new(3).unwrap();
        assert_eq!(e3.components(), vec![VertexSet(1), VertexSet(2), VertexSet(4)]);
    }

    #[test]
    fn delete_vertex_examples() {
        let c6 = Graph::cycle(6).unwrap();
        for v in 0..6 {
            let card = c6.delete_vertex(v).unwrap();
            assert_eq!(card.canonical_form(), Graph::path(5).unwrap().canonical_form());
        }
        let k1 = Graph::complete(1).unwrap();
        assert_eq!(k1.delete_vertex(0).unwrap().order(), 0);
        let card = Graph::named("2C3").unwrap().delete_vertex(4).unwrap();
        assert_eq!(sorted_degrees(&card), vec![1, 1, 2, 2, 2]);
        assert_eq!(card.components().len(), 2);
        assert_eq!(
            c6.delete_vertex(6),
            Err(GraphError::VertexOutOfRange { vertex: 6, order: 6 })
        );
    }

    #[test]
    fn delete_vertex_preserves_order_of_survivors() {
        let g = Graph::from_edges(4, &[(0, 3), (1, 2)]).unwrap();
        let h = g.delete_vertex(1).unwrap();
        assert!(h.has_edge(0, 2));
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn disjoint_union_examples() {
        let c3 = Graph::cycle(3).unwrap();
        let u = Graph::disjoint_union(&[c3.clone(), c3]).unwrap();
        assert_eq!(u.degrees(), vec![2; 6]);
        let k1 = Graph::complete(1).unwrap();
        assert_eq!(Graph::disjoint_union(std::slice::from_ref(&k1)).unwrap(), k1);
        let u = Graph::disjoint_union(&[Graph::path(2).unwrap(), Graph::path(3).unwrap()]).unwrap();
        let mut sizes: Vec<_> = u.components().iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3]);
        let big = Graph::new(40).unwrap();
        assert_eq!(
            Graph::disjoint_union(&[big.clone(), big]),
            Err(GraphError::UnionOverflow(80))
        );
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(Graph::cycle(6).unwrap().diameter(), Ok(3));
        assert_eq!(Graph::path(5).unwrap().diameter(), Ok(4));
        assert_eq!(Graph::complete(4).unwrap().diameter(), Ok(1));
        assert_eq!(Graph::named("2C3").unwrap().diameter(), Err(GraphError::Disconnected));
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        let mut g = Graph::new(3).unwrap();
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(Graph::new(0).is_err());
        assert!(Graph::new(65).is_err());
    }

    #[test]
    fn full_width_graphs_work() {
        let k64 = Graph::complete(64).unwrap();
        assert_eq!(k64.degree(63), 63);
        assert_eq!(k64.edge_count(), 64 * 63 / 2);
        assert_eq!(k64.edges().count(), 64 * 63 / 2);
        let card = k64.delete_vertex(63).unwrap();
        assert_eq!(card.edge_count(), 63 * 62 / 2);
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::named("K4").unwrap().edge_count(), 6);
        assert_eq!(Graph::named("P5").unwrap().edge_count(), 4);
        assert_eq!(Graph::named("C6").unwrap().degrees(), vec![2; 6]);
        assert_eq!(Graph::named("2C3").unwrap().order(), 6);
        assert_eq!(Graph::named("bowtie").unwrap().edge_count(), 6);
        assert!(Graph::named("C2").is_none());
        assert!(Graph::named("X3").is_none());
    }

    #[test]
    fn permute_and_complement() {
        let p3 = Graph::path(3).unwrap();
        let q = p3.permute(&[1, 0, 2]).unwrap();
        assert!(q.has_edge(1, 0) && q.has_edge(0, 2) && !q.has_edge(1, 2));
        assert!(p3.permute(&[0, 0, 1]).is_err());
        let c = p3.complement();
        assert_eq!(c.edge_count(), 1);
        assert!(c.has_edge(0, 2));
    }

    #[test]
    fn upper_triangle_bit_order() {
        // bit 0 = x(0,1), bit 1 = x(0,2), bit 2 = x(1,2)
        let g = Graph::from_upper_triangle(3, 0b100).unwrap();
        assert!(g.has_edge(1, 2));
        assert_eq!(g.edge_count(), 1);
    }
}

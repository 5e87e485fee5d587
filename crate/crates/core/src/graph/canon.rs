use std::fmt;

use super::{Graph, VertexSet};

/// Canonical representative of an isomorphism class.
///
/// Two graphs have equal canonical forms iff they are isomorphic. The
/// representative is the relabeling whose column-major upper-triangle bit
/// string is lexicographically smallest among all relabelings that place
/// the stable color-refinement cells in their canonical order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Graph);

impl CanonicalForm {
    pub fn of(g: &Graph) -> Self {
        let labeling = canonical_labeling(g);
        let mut perm = vec![0; g.order()];
        for (pos, &v) in labeling.iter().enumerate() {
            perm[v] = pos;
        }
        CanonicalForm(g.permute(&perm).expect("labeling is a permutation"))
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    /// The canonical adjacency encoding as a graph6 line.
    pub fn encoding(&self) -> String {
        crate::io::emit_graph6(&self.0).unwrap_or_default()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({:?})", self.0)
    }
}

/// Individualization-refinement search. Every leaf is a discrete ordered
/// partition; the canonical labeling is the leaf whose relabeled adjacency
/// columns are smallest. Subtrees related by a known automorphism that
/// fixes the current individualized prefix give the same leaves and are
/// skipped, and a leaf equivalent to an earlier one abandons its branch.
struct Search<'a> {
    g: &'a Graph,
    first: Vec<usize>,
    first_cols: Vec<u64>,
    first_path: Vec<usize>,
    best: Vec<usize>,
    best_cols: Vec<u64>,
    best_path: Vec<usize>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Splits cells by neighbor counts into every other cell until the
    /// partition is equitable. New cells keep their parent's position and
    /// are ordered by count vector, so the result depends only on the
    /// isomorphism type of the (graph, ordered partition) pair.
    fn refine(&self, cells: &mut Vec<u64>) {
        loop {
            let before = cells.len();
            let masks = cells.clone();
            let mut next = Vec::with_capacity(self.g.order());
            for &cell in &masks {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = VertexSet(cell)
                    .iter()
                    .map(|v| {
                        let row = self.g.row(v);
                        (masks.iter().map(|m| (row & m).count_ones()).collect(), v)
                    })
                    .collect();
                keyed.sort_unstable();
                let mut i = 0;
                while i < keyed.len() {
                    let mut part = 0u64;
                    let mut j = i;
                    while j < keyed.len() && keyed[j].0 == keyed[i].0 {
                        part |= 1 << keyed[j].1;
                        j += 1;
                    }
                    next.push(part);
                    i = j;
                }
            }
            *cells = next;
            if cells.len() == before {
                return;
            }
        }
    }

    fn columns(&self, labeling: &[usize]) -> Vec<u64> {
        (0..labeling.len())
            .map(|k| {
                let row = self.g.row(labeling[k]);
                let mut col = 0u64;
                for (i, &u) in labeling[..k].iter().enumerate() {
                    if row >> u & 1 == 1 {
                        col |= 1 << (k - 1 - i);
                    }
                }
                col
            })
            .collect()
    }

    /// Orbit representatives of the known automorphisms fixing `fixed`.
    fn orbit_roots(&self, fixed: &[usize]) -> Vec<usize> {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in &self.automorphisms {
            if fixed.iter().any(|&v| a[v] != v) {
                continue;
            }
            for (v, &w) in a.iter().enumerate() {
                let (x, y) = (find(&mut parent, v), find(&mut parent, w));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    /// Records the leaf at `cells`. When it is equivalent to the first or
    /// the best leaf, returns the depth of their common ancestor: the
    /// branch below it maps onto an explored one.
    fn leaf(&mut self, cells: &[u64], fixed: &[usize]) -> Option<usize> {
        let n = self.g.order();
        let labeling: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let cols = self.columns(&labeling);
        let diverge = |path: &[usize]| path.iter().zip(fixed).take_while(|(a, b)| a == b).count();
        let mut jump = None;
        for (reference, ref_cols, ref_path) in [
            (&self.first, &self.first_cols, &self.first_path),
            (&self.best, &self.best_cols, &self.best_path),
        ] {
            if !reference.is_empty() && cols == *ref_cols {
                let mut a = vec![0; n];
                for (k, &v) in labeling.iter().enumerate() {
                    a[v] = reference[k];
                }
                self.automorphisms.push(a);
                jump = Some(diverge(ref_path));
                break;
            }
        }
        if self.first.is_empty() {
            self.first.clone_from(&labeling);
            self.first_cols.clone_from(&cols);
            self.first_path = fixed.to_vec();
        }
        if self.best.is_empty() || cols < self.best_cols {
            self.best = labeling;
            self.best_cols = cols;
            self.best_path = fixed.to_vec();
        }
        jump
    }

    fn run(&mut self, cells: Vec<u64>, fixed: &mut Vec<usize>) -> Option<usize> {
        if cells.len() == self.g.order() {
            return self.leaf(&cells, fixed);
        }
        let depth = fixed.len();
        let target = cells.iter().position(|c| c.count_ones() > 1).expect("non-discrete partition");
        let mut tried: Vec<usize> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        let mut known = 0;
        for v in VertexSet(cells[target]).iter() {
            if known != self.automorphisms.len() {
                roots = self.orbit_roots(fixed);
                known = self.automorphisms.len();
            }
            if !roots.is_empty() && tried.iter().any(|&u| roots[u] == roots[v]) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << v);
            child.push(cells[target] & !(1 << v));
            child.extend_from_slice(&cells[target + 1..]);
            self.refine(&mut child);
            fixed.push(v);
            let jump = self.run(child, fixed);
            fixed.pop();
            if let Some(level) = jump {
                if level < depth {
                    return jump;
                }
            }
        }
        None
    }
}

/// Canonical vertex order: position `k` of the result holds the vertex that
/// becomes vertex `k` of the canonical form.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let edges = g.edge_count();
    if n <= 1 || edges == 0 || edges == n * (n - 1) / 2 {
        return (0..n).collect();
    }
    let mut search = Search {
        g,
        first: Vec::new(),
        first_cols: Vec::new(),
        first_path: Vec::new(),
        best: Vec::new(),
        best_cols: Vec::new(),
        best_path: Vec::new(),
        automorphisms: Vec::new(),
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut cells = vec![all];
    search.refine(&mut cells);
    search.run(cells, &mut Vec::new());
    search.best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    go(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    #[test]
    fn all_labelings_of_p3_agree() {
        let p3 = Graph::path(3).unwrap();
        let forms: Vec<_> = all_perms(3)
            .iter()
            .map(|p| p3.permute(p).unwrap().canonical_form())
            .collect();
        assert!(forms.windows(2).all(|w| w[0] == w[1]));
        assert_ne!(forms[0], Graph::complete(3).unwrap().canonical_form());
    }

    #[test]
    fn four_vertex_classes() {
        // independent oracle: minimum mask over all 24 relabelings
        let perms = all_perms(4);
        let mut oracle = std::collections::BTreeSet::new();
        let mut forms = std::collections::BTreeSet::new();
        for mask in 0..64u64 {
            let g = Graph::from_upper_triangle(4, mask).unwrap();
            let min = perms
                .iter()
                .map(|p| {
                    let h = g.permute(p).unwrap();
                    let mut m = 0u64;
                    let mut k = 0;
                    for j in 1..4 {
                        for i in 0..j {
                            m |= (h.has_edge(i, j) as u64) << k;
                            k += 1;
                        }
                    }
                    m
                })
                .min()
                .unwrap();
            oracle.insert(min);
            forms.insert(g.canonical_form());
        }
        assert_eq!(oracle.len(), 11);
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn regular_graphs_canonicalize() {
        // C6 and 2C3 are both 2-regular: one refinement cell, full search
        let c6 = Graph::cycle(6).unwrap();
        let two_c3 = Graph::named("2C3").unwrap();
        assert_ne!(c6.canonical_form(), two_c3.canonical_form());
        let shuffled = c6.permute(&[3, 5, 0, 2, 4, 1]).unwrap();
        assert_eq!(shuffled.canonical_form(), c6.canonical_form());
    }

    #[test]
    fn large_symmetric_graphs_canonicalize() {
        let mut matching = Graph::new(64).unwrap();
        let mut cube = Graph::new(64).unwrap();
        let mut biclique = Graph::new(64).unwrap();
        for v in 0..64usize {
            if v % 2 == 0 {
                matching.add_edge(v, v + 1).unwrap();
            }
            for b in 0..6 {
                if v ^ (1 << b) > v {
                    cube.add_edge(v, v ^ (1 << b)).unwrap();
                }
            }
            if v < 32 {
                for u in 32..64 {
                    biclique.add_edge(v, u).unwrap();
                }
            }
        }
        let perm: Vec<usize> = (0..64).map(|i| (i * 37 + 5) % 64).collect();
        for g in [matching, cube, biclique] {
            assert_eq!(g.permute(&perm).unwrap().canonical_form(), g.canonical_form());
        }
        assert_ne!(Graph::cycle(64).unwrap().canonical_form(), {
            let mut two = Graph::new(64).unwrap();
            for i in 0..32 {
                two.add_edge(i, (i + 1) % 32).unwrap();
                two.add_edge(32 + i, 32 + (i + 1) % 32).unwrap();
            }
            two.canonical_form()
        });
    }
}

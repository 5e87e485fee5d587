use crlab::enumerate::enumerate_graphs;
use crlab::{Graph, VertexSet};

fn component_count(g: &Graph) -> usize {
    g.components().len()
}

/// `v` is a cut vertex iff deleting it increases the number of components
/// of the remaining graph (isolated `v` excluded).
fn brute_cut_vertices(g: &Graph) -> VertexSet {
    let base = component_count(g);
    (0..g.order())
        .filter(|&v| {
            let rest = g.delete_vertex(v).unwrap();
            g.degree(v) > 0 && component_count(&rest) > base
        })
        .collect()
}

/// Every edge lies in exactly one block; each block induces a connected
/// subgraph without cut vertices; no two blocks share more than one vertex.
fn check_blocks(g: &Graph) {
    let t = g.block_cut_tree();
    for (u, v) in g.edges() {
        let holders = t.blocks.iter().filter(|b| b.contains(u) && b.contains(v)).count();
        assert_eq!(holders, 1, "edge {u}-{v} of {g:?}");
    }
    for b in &t.blocks {
        let h = g.induced(*b);
        assert!(h.is_connected());
        if h.order() > 2 {
            assert!(brute_cut_vertices(&h).is_empty(), "block {b} of {g:?} is not biconnected");
        }
    }
    for (i, a) in t.blocks.iter().enumerate() {
        for b in &t.blocks[i + 1..] {
            assert!(VertexSet(a.0 & b.0).len() <= 1);
        }
    }
    let covered = t.blocks.iter().fold(0u64, |m, b| m | b.0);
    assert_eq!(covered, g.vertices().0);
    for &(b, c) in &t.incidence {
        assert!(t.blocks[b].contains(c) && t.cut_vertices.contains(c));
    }
    assert_eq!(t.forest_components(), component_count(g));
    assert_eq!(t.is_tree(), g.is_connected());
}

#[test]
fn cut_vertices_match_brute_force() {
    for n in 1..=7 {
        for g in &enumerate_graphs(n).unwrap().graphs {
            assert_eq!(g.block_cut_tree().cut_vertices, brute_cut_vertices(g), "{g:?}");
        }
    }
}

#[test]
fn blocks_are_maximal_biconnected_pieces() {
    for n in 1..=6 {
        for g in &enumerate_graphs(n).unwrap().graphs {
            check_blocks(g);
        }
    }
}

#[test]
fn leaf_blocks_have_at_most_one_cut_vertex() {
    for g in &enumerate_graphs(7).unwrap().graphs {
        let t = g.block_cut_tree();
        for (i, b) in t.blocks.iter().enumerate() {
            let cuts = VertexSet(b.0 & t.cut_vertices.0).len();
            assert_eq!(t.leaf_blocks.contains(&i), cuts <= 1);
        }
    }
}

mod common;

use std::collections::BTreeSet;

use crlab::enumerate::{enumerate_graphs, parse_corpus, Provenance};
use crlab::Graph;

#[test]
fn totals_match_burnside() {
    let mut totals = vec![1u64];
    for n in 1..=8 {
        let corpus = enumerate_graphs(n).unwrap();
        assert_eq!(corpus.len() as u64, common::burnside_count(n), "n = {n}");
        totals.push(corpus.len() as u64);
    }
    assert_eq!(totals, [1, 1, 2, 4, 11, 34, 156, 1044, 12346]);
}

#[test]
fn connected_counts_match_euler_inversion() {
    let corpora: Vec<_> = (1..=8).map(|n| enumerate_graphs(n).unwrap()).collect();
    let mut totals = vec![1u64];
    totals.extend(corpora.iter().map(|c| c.len() as u64));
    let want = common::connected_counts(&totals);
    for (c, &w) in corpora.iter().zip(&want[1..]) {
        assert_eq!(c.connected_count() as u64, w, "n = {}", c.order);
        let direct = c.graphs.iter().filter(|g| g.is_connected()).count();
        assert_eq!(direct, c.connected_count());
    }
}

#[test]
fn classes_match_brute_force_dedup() {
    for n in 1..=6 {
        let corpus = enumerate_graphs(n).unwrap();
        let got: BTreeSet<u64> = corpus.graphs.iter().map(common::min_mask).collect();
        assert_eq!(got.len(), corpus.len(), "n = {n}: corpus holds isomorphic duplicates");
        assert_eq!(got, common::brute_classes(n), "n = {n}");
    }
}

#[test]
fn corpus_is_sorted_canonical_and_closed_under_complement() {
    for n in 1..=7 {
        let corpus = enumerate_graphs(n).unwrap();
        let set: BTreeSet<&Graph> = corpus.graphs.iter().collect();
        for w in corpus.graphs.windows(2) {
            assert!((w[0].edge_count(), &w[0]) < (w[1].edge_count(), &w[1]));
        }
        for g in &corpus.graphs {
            assert_eq!(g.canonical_form().graph(), g);
            let co = g.complement().canonical_form().into_graph();
            assert!(set.contains(&co), "complement of {g:?} missing at n = {n}");
        }
    }
}

#[test]
fn external_corpus_marks_provenance_and_dedups() {
    let corpus = enumerate_graphs(5).unwrap();
    let mut text = String::new();
    for g in corpus.graphs.iter().rev() {
        let perm: Vec<usize> = (0..5).rev().collect();
        text.push_str(&crlab::io::emit_graph6(&g.permute(&perm).unwrap()).unwrap());
        text.push('\n');
    }
    text.push_str(&crlab::io::emit_graph6(&corpus.graphs[3]).unwrap());
    text.push('\n');
    let loaded = parse_corpus(&text).unwrap();
    assert_eq!(loaded.provenance, Provenance::External);
    assert_eq!(loaded.duplicates_dropped, 1);
    assert_eq!(loaded.graphs, corpus.graphs);
}

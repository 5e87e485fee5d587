//! Decks of vertex-deleted subgraphs and the invariant `dcor(G)`, the
//! multiset of color-refinement invariants of the cards.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::digest::{Digest, Hasher};
use crate::graph::{CanonicalForm, Graph};
use crate::io::{emit_graph6, parse_graph6, ParseError};
use crate::refine::{cr_equivalent_exact, cr_invariant, iterated_degrees, CrInvariant, RefineError};
use crate::VERSION_TAG;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeckError {
    #[error("{0}")]
    Domain(String),
    #[error(
        "integrity failure: graphs {connected} (connected) and {disconnected} (disconnected) share a deck invariant"
    )]
    Integrity { connected: String, disconnected: String },
    #[error("deck of card order {card_order} cannot be classified with an index of order {index_order}")]
    OrderMismatch { card_order: usize, index_order: usize },
    #[error("deck index line {line}: {message}")]
    IndexFormat { line: usize, message: String },
    #[error(transparent)]
    Refine(#[from] RefineError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// All `n` cards; card `i` is `g \ i`.
pub fn deck(g: &Graph) -> Vec<Graph> {
    (0..g.order())
        .map(|v| g.delete_vertex(v).expect("vertex in range"))
        .collect()
}

/// Sorted canonical forms of the cards: the deck up to isomorphism.
pub fn exact_deck(g: &Graph) -> Vec<CanonicalForm> {
    let mut cards: Vec<CanonicalForm> = deck(g).iter().map(Graph::canonical_form).collect();
    cards.sort_unstable();
    cards
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeckInvariant {
    pub card_order: usize,
    /// Sorted; one entry per card.
    pub cards: Vec<CrInvariant>,
}

impl DeckInvariant {
    pub fn from_cards(cards: &[Graph]) -> Result<DeckInvariant, DeckError> {
        let card_order = cards.first().map(Graph::order).ok_or_else(|| {
            DeckError::Domain("a deck needs at least one card".into())
        })?;
        if cards.iter().any(|c| c.order() != card_order) {
            return Err(DeckError::Domain("cards of a deck must share one order".into()));
        }
        let mut invs: Vec<CrInvariant> = cards.iter().map(cr_invariant).collect();
        invs.sort_unstable();
        Ok(DeckInvariant { card_order, cards: invs })
    }

    pub fn fingerprint(&self) -> Digest {
        let mut h = Hasher::new("crlab.dcr.invariant");
        h.u64(self.card_order as u64).u64(self.cards.len() as u64);
        for c in &self.cards {
            h.digest(&c.fingerprint());
        }
        h.finish()
    }
}

/// `dcor(G)`. Cards are read at round `n - 1`, their common order.
pub fn dcr_invariant(g: &Graph) -> DeckInvariant {
    let mut cards: Vec<CrInvariant> = deck(g).iter().map(cr_invariant).collect();
    cards.sort_unstable();
    DeckInvariant { card_order: g.order().saturating_sub(1), cards }
}

pub fn dcr_equivalent(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && dcr_invariant(g) == dcr_invariant(h)
}

/// Deck equivalence up to exact CR-equivalence of cards, compared
/// pairwise so that each joint refinement stays within the batch cap.
pub fn dcr_equivalent_exact(g: &Graph, h: &Graph) -> Result<bool, RefineError> {
    if g.order() != h.order() {
        return Ok(false);
    }
    let cards: Vec<(usize, Graph)> = deck(g)
        .into_iter()
        .map(|c| (0, c))
        .chain(deck(h).into_iter().map(|c| (1, c)))
        .collect();
    // representative card and per-side multiplicity for each class
    let mut classes: Vec<(usize, [usize; 2])> = Vec::new();
    'cards: for (i, (side, card)) in cards.iter().enumerate() {
        for (rep, counts) in classes.iter_mut() {
            if cr_equivalent_exact(&cards[*rep].1, card)? {
                counts[*side] += 1;
                continue 'cards;
            }
        }
        let mut counts = [0, 0];
        counts[*side] = 1;
        classes.push((i, counts));
    }
    Ok(classes.iter().all(|(_, c)| c[0] == c[1]))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NashWilliamsReport {
    /// Vertex pairs `(u, v)` whose cards are CR-equivalent.
    pub checked_pairs: usize,
    /// Checked pairs whose iterated degrees differ.
    pub violations: Vec<(usize, usize)>,
}

/// For decks equal up to CR-equivalence, every pair of vertices with
/// CR-equivalent cards must have equal iterated degrees.
pub fn nash_williams_check(g: &Graph, h: &Graph) -> Result<NashWilliamsReport, DeckError> {
    if !dcr_equivalent(g, h) {
        return Err(DeckError::Domain(
            "nash_williams_check requires decks equal up to CR-equivalence".into(),
        ));
    }
    let cards_g: Vec<CrInvariant> = deck(g).iter().map(cr_invariant).collect();
    let cards_h: Vec<CrInvariant> = deck(h).iter().map(cr_invariant).collect();
    let (dg, dh) = (iterated_degrees(g), iterated_degrees(h));
    let mut report = NashWilliamsReport::default();
    for (u, cu) in cards_g.iter().enumerate() {
        for (v, cv) in cards_h.iter().enumerate() {
            if cu == cv {
                report.checked_pairs += 1;
                if dg[u] != dh[v] {
                    report.violations.push((u, v));
                }
            }
        }
    }
    Ok(report)
}

/// Number of connected cards. The "at least two connected cards" test
/// for connectedness needs `n >= 3`: both cards of `2K1` are connected.
pub fn connected_card_count(g: &Graph) -> Result<usize, DeckError> {
    if g.order() < 3 {
        return Err(DeckError::Domain(format!(
            "connected_card_count needs order >= 3, got {}",
            g.order()
        )));
    }
    Ok(deck(g).iter().filter(|c| c.is_connected()).count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connectivity {
    Connected,
    Disconnected,
    Unknown,
}

impl std::fmt::Display for Connectivity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Connectivity::Connected => "connected",
            Connectivity::Disconnected => "disconnected",
            Connectivity::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeckIndexEntry {
    pub graph6: String,
    pub connected: bool,
    pub key: Digest,
}

/// Lookup table from deck fingerprints to the corpus graphs carrying them.
///
/// File form, one record per line: `graph6 <TAB> C|D <TAB> hex digest`,
/// preceded by a `#crlab-deck-index` header naming the order and the
/// algorithm version.
#[derive(Debug, Clone, Default)]
pub struct DeckIndex {
    order: usize,
    entries: Vec<DeckIndexEntry>,
    by_key: HashMap<Digest, Vec<usize>>,
}

impl DeckIndex {
    pub fn new(order: usize, entries: Vec<DeckIndexEntry>) -> DeckIndex {
        let mut by_key: HashMap<Digest, Vec<usize>> = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            by_key.entry(e.key).or_default().push(i);
        }
        DeckIndex { order, entries, by_key }
    }

    pub fn from_graphs(order: usize, graphs: &[Graph]) -> DeckIndex {
        use rayon::prelude::*;
        let entries = graphs
            .par_iter()
            .map(|g| DeckIndexEntry {
                graph6: emit_graph6(g).unwrap_or_default(),
                connected: g.is_connected(),
                key: dcr_invariant(g).fingerprint(),
            })
            .collect();
        DeckIndex::new(order, entries)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[DeckIndexEntry] {
        &self.entries
    }

    pub fn matches(&self, key: &Digest) -> impl Iterator<Item = &DeckIndexEntry> {
        self.by_key.get(key).into_iter().flatten().map(|&i| &self.entries[i])
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "#crlab-deck-index order={} count={} version={VERSION_TAG}\n",
            self.order,
            self.entries.len()
        );
        for e in &self.entries {
            let flag = if e.connected { 'C' } else { 'D' };
            let _ = writeln!(s, "{}\t{flag}\t{}", e.graph6, e.key);
        }
        s
    }

    pub fn parse(text: &str) -> Result<DeckIndex, DeckError> {
        let mut order = None;
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |message: String| DeckError::IndexFormat { line: line_no, message };
            if let Some(header) = line.strip_prefix("#crlab-deck-index") {
                for field in header.split_whitespace() {
                    if let Some(v) = field.strip_prefix("order=") {
                        order = Some(v.parse().map_err(|_| err(format!("bad order {v:?}")))?);
                    } else if let Some(v) = field.strip_prefix("version=") {
                        if v != VERSION_TAG {
                            return Err(err(format!(
                                "index built by {v}, this build is {VERSION_TAG}"
                            )));
                        }
                    }
                }
                continue;
            }
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [g6, flag, hex] = fields[..] else {
                return Err(err("expected three tab-separated fields".into()));
            };
            let connected = match flag {
                "C" => true,
                "D" => false,
                other => return Err(err(format!("bad connectedness flag {other:?}"))),
            };
            let key = Digest::from_hex(hex).ok_or_else(|| err(format!("bad digest {hex:?}")))?;
            let g = parse_graph6(g6)?;
            if *order.get_or_insert(g.order()) != g.order() {
                return Err(err("records of mixed order".into()));
            }
            entries.push(DeckIndexEntry { graph6: g6.to_string(), connected, key });
        }
        Ok(DeckIndex::new(order.unwrap_or(0), entries))
    }
}

/// Classifies a deck by corpus lookup. The index must cover every graph
/// of order `card_order + 1`.
pub fn connectedness_from_deck(
    d: &DeckInvariant,
    index: &DeckIndex,
) -> Result<Connectivity, DeckError> {
    if d.card_order + 1 != index.order() {
        return Err(DeckError::OrderMismatch {
            card_order: d.card_order,
            index_order: index.order(),
        });
    }
    let key = d.fingerprint();
    let mut connected: Option<&DeckIndexEntry> = None;
    let mut disconnected: Option<&DeckIndexEntry> = None;
    for e in index.matches(&key) {
        if e.connected {
            connected.get_or_insert(e);
        } else {
            disconnected.get_or_insert(e);
        }
    }
    match (connected, disconnected) {
        (Some(c), Some(d)) => Err(DeckError::Integrity {
            connected: c.graph6.clone(),
            disconnected: d.graph6.clone(),
        }),
        (Some(_), None) => Ok(Connectivity::Connected),
        (None, Some(_)) => Ok(Connectivity::Disconnected),
        (None, None) => Ok(Connectivity::Unknown),
    }
}

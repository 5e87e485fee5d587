//! Graph invariants behind one interface, registered by name.
//!
//! Every invariant offers a digest-mode key (equal keys for isomorphic
//! graphs, distinct keys for inequivalent ones up to digest collisions)
//! and an exact pairwise comparison used as ground truth. Corpus sweeps
//! group by keys; experiments and the CLI look invariants up by name.

use std::fmt;

use crate::deck::{dcr_equivalent_exact, dcr_invariant, exact_deck};
use crate::digest::{Digest, Hasher};
use crate::graph::Graph;
use crate::io::emit_graph6;
use crate::refine::{cr_equivalent_exact, cr_invariant, RefineError};
use crate::wl2::{wl2_equivalent_exact, wl2_invariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Digest,
    Exact,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Digest => "digest",
            Mode::Exact => "exact",
        })
    }
}

pub trait Invariant: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn key(&self, g: &Graph) -> Digest;

    fn equivalent_exact(&self, g: &Graph, h: &Graph) -> Result<bool, RefineError>;

    fn equivalent(&self, g: &Graph, h: &Graph, mode: Mode) -> Result<bool, RefineError> {
        match mode {
            Mode::Digest => Ok(g.order() == h.order() && self.key(g) == self.key(h)),
            Mode::Exact => self.equivalent_exact(g, h),
        }
    }
}

/// Isomorphism, via canonical forms.
pub struct Isomorphism;

impl Invariant for Isomorphism {
    fn name(&self) -> &'static str {
        "iso"
    }

    fn description(&self) -> &'static str {
        "isomorphism type (canonical form)"
    }

    fn key(&self, g: &Graph) -> Digest {
        let mut h = Hasher::new("crlab.iso");
        let form = g.canonical_form();
        h.u64(g.order() as u64);
        for v in 0..g.order() {
            h.u64(form.graph().row(v));
        }
        h.finish()
    }

    fn equivalent_exact(&self, g: &Graph, h: &Graph) -> Result<bool, RefineError> {
        Ok(g.canonical_form() == h.canonical_form())
    }
}

/// `cor(G)`.
pub struct ColorRefinement;

impl Invariant for ColorRefinement {
    fn name(&self) -> &'static str {
        "cr"
    }

    fn description(&self) -> &'static str {
        "color refinement (1-WL) color multiset"
    }

    fn key(&self, g: &Graph) -> Digest {
        cr_invariant(g).fingerprint()
    }

    fn equivalent_exact(&self, g: &Graph, h: &Graph) -> Result<bool, RefineError> {
        cr_equivalent_exact(g, h)
    }
}

/// `dcor(G)`.
pub struct DeckColorRefinement;

impl Invariant for DeckColorRefinement {
    fn name(&self) -> &'static str {
        "dcr"
    }

    fn description(&self) -> &'static str {
        "multiset of color refinement invariants of the cards"
    }

    fn key(&self, g: &Graph) -> Digest {
        dcr_invariant(g).fingerprint()
    }

    fn equivalent_exact(&self, g: &Graph, h: &Graph) -> Result<bool, RefineError> {
        dcr_equivalent_exact(g, h)
    }
}

/// `wl(G)`.
pub struct WeisfeilerLeman2;

impl Invariant for WeisfeilerLeman2 {
    fn name(&self) -> &'static str {
        "wl2"
    }

    fn description(&self) -> &'static str {
        "2-dimensional Weisfeiler-Leman pair color multiset"
    }

    fn key(&self, g: &Graph) -> Digest {
        wl2_invariant(g).fingerprint()
    }

    fn equivalent_exact(&self, g: &Graph, h: &Graph) -> Result<bool, RefineError> {
        Ok(wl2_equivalent_exact(g, h))
    }
}

/// The deck up to isomorphism of cards.
pub struct ExactDeck;

impl Invariant for ExactDeck {
    fn name(&self) -> &'static str {
        "exact-deck"
    }

    fn description(&self) -> &'static str {
        "multiset of card isomorphism types"
    }

    fn key(&self, g: &Graph) -> Digest {
        let mut h = Hasher::new("crlab.exact-deck");
        h.u64(g.order() as u64);
        for card in exact_deck(g) {
            let line = emit_graph6(card.graph()).unwrap_or_default();
            h.u64(line.len() as u64).bytes(line.as_bytes());
        }
        h.finish()
    }

    fn equivalent_exact(&self, g: &Graph, h: &Graph) -> Result<bool, RefineError> {
        Ok(g.order() == h.order() && exact_deck(g) == exact_deck(h))
    }
}

pub struct InvariantRegistry {
    entries: Vec<Box<dyn Invariant>>,
}

impl InvariantRegistry {
    pub fn empty() -> Self {
        InvariantRegistry { entries: Vec::new() }
    }

    /// `iso`, `wl2`, `cr`, `dcr`, `exact-deck`.
    pub fn builtin() -> Self {
        let mut r = InvariantRegistry::empty();
        r.register(Box::new(Isomorphism));
        r.register(Box::new(WeisfeilerLeman2));
        r.register(Box::new(ColorRefinement));
        r.register(Box::new(DeckColorRefinement));
        r.register(Box::new(ExactDeck));
        r
    }

    /// Adds an invariant, replacing any previous one with the same name.
    pub fn register(&mut self, inv: Box<dyn Invariant>) {
        self.entries.retain(|e| e.name() != inv.name());
        self.entries.push(inv);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Invariant> {
        self.entries.iter().find(|e| e.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Invariant> {
        self.entries.iter().map(|b| b.as_ref())
    }
}

impl Default for InvariantRegistry {
    fn default() -> Self {
        InvariantRegistry::builtin()
    }
}

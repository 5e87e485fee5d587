//! Corpus-scale verifications, each behind the [`Experiment`] trait and
//! selected by name from an [`ExperimentRegistry`].
//!
//! Grouping uses digest keys; whenever a digest class with more than one
//! member matters, its members are re-checked with the exact pairwise
//! comparison, and a disagreement aborts the run.

mod hierarchy;
mod report;
mod theorems;

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

pub use hierarchy::{Hierarchy, OpenQuestionProbe};
pub use report::{ClassCounts, ClassListing, Record, Verdict, VerificationReport, REPORT_SCHEMA};
pub use theorems::{ExactDeckConnectedness, LittleTheorem, MainTheorem};

use crate::digest::Digest;
use crate::enumerate::{Corpus, CorpusError};
use crate::graph::Graph;
use crate::invariant::InvariantRegistry;
use crate::io::emit_graph6;
use crate::refine::RefineError;
use crate::VERSION_TAG;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("{0}")]
    Domain(String),
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error(transparent)]
    Refine(#[from] RefineError),
    #[error("unknown experiment {0:?}")]
    Unknown(String),
}

/// Per-graph keys of every registered invariant, computed once per corpus.
pub struct CorpusProfile {
    keys: BTreeMap<&'static str, Vec<Digest>>,
}

impl CorpusProfile {
    pub fn compute(corpus: &Corpus, registry: &InvariantRegistry) -> CorpusProfile {
        let keys = registry
            .iter()
            .map(|inv| (inv.name(), corpus.graphs.par_iter().map(|g| inv.key(g)).collect()))
            .collect();
        CorpusProfile { keys }
    }

    pub fn keys(&self, invariant: &str) -> &[Digest] {
        self.keys.get(invariant).map_or(&[], Vec::as_slice)
    }

    /// Classes of corpus indices with equal keys, ordered by first member.
    pub fn classes(&self, invariant: &str) -> Vec<Vec<usize>> {
        let mut by_key: BTreeMap<Digest, Vec<usize>> = BTreeMap::new();
        for (i, k) in self.keys(invariant).iter().enumerate() {
            by_key.entry(*k).or_default().push(i);
        }
        let mut classes: Vec<Vec<usize>> = by_key.into_values().collect();
        classes.sort_unstable_by_key(|c| c[0]);
        classes
    }

    pub fn class_count(&self, invariant: &str) -> usize {
        let mut ks = self.keys(invariant).to_vec();
        ks.sort_unstable();
        ks.dedup();
        ks.len()
    }
}

pub struct ExperimentContext<'a> {
    pub corpus: &'a Corpus,
    pub registry: &'a InvariantRegistry,
    profile: OnceLock<CorpusProfile>,
}

impl<'a> ExperimentContext<'a> {
    pub fn new(corpus: &'a Corpus, registry: &'a InvariantRegistry) -> Self {
        ExperimentContext { corpus, registry, profile: OnceLock::new() }
    }

    pub fn profile(&self) -> &CorpusProfile {
        self.profile.get_or_init(|| CorpusProfile::compute(self.corpus, self.registry))
    }

    pub fn graph(&self, i: usize) -> &Graph {
        &self.corpus.graphs[i]
    }

    pub fn graph6(&self, i: usize) -> String {
        emit_graph6(&self.corpus.graphs[i]).unwrap_or_default()
    }

    pub fn class_counts(&self) -> ClassCounts {
        let p = self.profile();
        ClassCounts {
            iso: p.class_count("iso"),
            wl2: p.class_count("wl2"),
            cr: p.class_count("cr"),
            dcr: p.class_count("dcr"),
            exact_deck: p.class_count("exact-deck"),
        }
    }

    pub fn listing(&self, invariant: &str, members: &[usize]) -> ClassListing {
        ClassListing {
            invariant: invariant.to_string(),
            graphs: members.iter().map(|&i| self.graph6(i)).collect(),
            connected: members.iter().map(|&i| self.corpus.connected[i]).collect(),
        }
    }

    /// Report skeleton with corpus data and class counts filled in.
    pub(crate) fn report(&self, experiment: &str) -> VerificationReport {
        VerificationReport {
            schema: REPORT_SCHEMA.to_string(),
            version: VERSION_TAG.to_string(),
            experiment: experiment.to_string(),
            order: self.corpus.order,
            corpus_size: self.corpus.len(),
            corpus_provenance: self.corpus.provenance.as_str().to_string(),
            verdict: Verdict::Pass,
            class_counts: self.class_counts(),
            violations: Vec::new(),
            findings: Vec::new(),
            multi_member_classes: Vec::new(),
            metrics: BTreeMap::new(),
            notes: Vec::new(),
            runtime_ms: 0,
        }
    }

    /// Re-checks a digest class with the exact comparison of `invariant`.
    pub(crate) fn verify_class_exact(
        &self,
        invariant: &str,
        members: &[usize],
    ) -> Result<(), ExperimentError> {
        let inv = self
            .registry
            .get(invariant)
            .ok_or_else(|| ExperimentError::Unknown(invariant.to_string()))?;
        let first = self.graph(members[0]);
        for &m in &members[1..] {
            if !inv.equivalent_exact(first, self.graph(m))? {
                return Err(ExperimentError::Integrity(format!(
                    "{invariant} digests agree but exact comparison differs for {} and {}",
                    self.graph6(members[0]),
                    self.graph6(m)
                )));
            }
        }
        Ok(())
    }
}

pub trait Experiment: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Fills in verdict-relevant content of the report; the runner stamps
    /// the verdict and runtime.
    fn run(&self, ctx: &ExperimentContext) -> Result<VerificationReport, ExperimentError>;
}

/// Runs `exp`, stamping the runtime and deriving the verdict from the
/// violation list for in-scope runs.
pub fn execute(
    exp: &dyn Experiment,
    ctx: &ExperimentContext,
) -> Result<VerificationReport, ExperimentError> {
    let start = Instant::now();
    let mut report = exp.run(ctx)?;
    if report.verdict != Verdict::OutOfScope {
        report.verdict = if report.violations.is_empty() { Verdict::Pass } else { Verdict::Fail };
    }
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

pub struct ExperimentRegistry {
    entries: Vec<Box<dyn Experiment>>,
}

impl ExperimentRegistry {
    pub fn empty() -> Self {
        ExperimentRegistry { entries: Vec::new() }
    }

    /// `main`, `harary`, `hierarchy`, `little`, `probe-openq`.
    pub fn builtin() -> Self {
        let mut r = ExperimentRegistry::empty();
        r.register(Box::new(MainTheorem));
        r.register(Box::new(ExactDeckConnectedness));
        r.register(Box::new(Hierarchy));
        r.register(Box::new(LittleTheorem));
        r.register(Box::new(OpenQuestionProbe));
        r
    }

    pub fn register(&mut self, exp: Box<dyn Experiment>) {
        self.entries.retain(|e| e.name() != exp.name());
        self.entries.push(exp);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Experiment> {
        self.entries.iter().find(|e| e.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    /// Looks `name` up and runs it on `corpus`.
    pub fn run(
        &self,
        name: &str,
        corpus: &Corpus,
        invariants: &InvariantRegistry,
    ) -> Result<VerificationReport, ExperimentError> {
        let exp = self.get(name).ok_or_else(|| ExperimentError::Unknown(name.to_string()))?;
        execute(exp, &ExperimentContext::new(corpus, invariants))
    }
}

impl Default for ExperimentRegistry {
    fn default() -> Self {
        ExperimentRegistry::builtin()
    }
}

fn run_on(name: &str, corpus: &Corpus) -> Result<VerificationReport, ExperimentError> {
    ExperimentRegistry::builtin().run(name, corpus, &InvariantRegistry::builtin())
}

/// Connectedness is constant on every class of `dcor`.
pub fn verify_main_theorem(corpus: &Corpus) -> Result<VerificationReport, ExperimentError> {
    run_on("main", corpus)
}

/// Connectedness is constant on every class of exact decks.
pub fn verify_harary(corpus: &Corpus) -> Result<VerificationReport, ExperimentError> {
    run_on("harary", corpus)
}

pub fn verify_hierarchy(corpus: &Corpus) -> Result<VerificationReport, ExperimentError> {
    run_on("hierarchy", corpus)
}

pub fn verify_little_theorem(corpus: &Corpus) -> Result<VerificationReport, ExperimentError> {
    run_on("little", corpus)
}

pub fn probe_open_question(corpus: &Corpus) -> Result<VerificationReport, ExperimentError> {
    run_on("probe-openq", corpus)
}

/// Number of unordered pairs inside classes.
pub(crate) fn pairs_within(classes: &[Vec<usize>]) -> u64 {
    classes.iter().map(|c| (c.len() * (c.len() - 1) / 2) as u64).sum()
}

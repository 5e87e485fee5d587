use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: &str = "crlab.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// The corpus order lies outside the statement's range; nothing was
    /// asserted.
    OutOfScope,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::OutOfScope => "OUT_OF_SCOPE",
        })
    }
}

/// Number of classes each invariant splits the corpus into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClassCounts {
    pub iso: usize,
    pub wl2: usize,
    pub cr: usize,
    pub dcr: usize,
    pub exact_deck: usize,
}

impl ClassCounts {
    /// Coarser invariants never produce more classes.
    pub fn is_monotone(&self) -> bool {
        self.iso >= self.wl2 && self.wl2 >= self.cr && self.iso >= self.dcr && self.iso >= self.exact_deck
    }
}

/// A group of corpus graphs (graph6) with an explanation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub kind: String,
    pub graphs: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassListing {
    pub invariant: String,
    pub graphs: Vec<String>,
    pub connected: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub version: String,
    pub experiment: String,
    pub order: usize,
    pub corpus_size: usize,
    pub corpus_provenance: String,
    pub verdict: Verdict,
    pub class_counts: ClassCounts,
    pub violations: Vec<Record>,
    pub findings: Vec<Record>,
    pub multi_member_classes: Vec<ClassListing>,
    pub metrics: BTreeMap<String, u64>,
    pub notes: Vec<String>,
    pub runtime_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One JSON document on a single line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} n={} corpus={} ({}) verdict={} [{} ms, {}]",
            self.experiment,
            self.order,
            self.corpus_size,
            self.corpus_provenance,
            self.verdict,
            self.runtime_ms,
            self.version
        );
        let c = &self.class_counts;
        let _ = writeln!(s, "  classes   iso   wl2    cr   dcr  exact-deck");
        let _ = writeln!(
            s,
            "          {:>5} {:>5} {:>5} {:>5} {:>11}",
            c.iso, c.wl2, c.cr, c.dcr, c.exact_deck
        );
        for (k, v) in &self.metrics {
            let _ = writeln!(s, "  {k}: {v}");
        }
        let _ = writeln!(s, "  violations: {}", self.violations.len());
        for r in &self.violations {
            let _ = writeln!(s, "    [{}] {} :: {}", r.kind, r.graphs.join(" "), r.detail);
        }
        let _ = writeln!(s, "  findings: {}", self.findings.len());
        for r in &self.findings {
            let _ = writeln!(s, "    [{}] {} :: {}", r.kind, r.graphs.join(" "), r.detail);
        }
        if !self.multi_member_classes.is_empty() {
            let _ = writeln!(s, "  multi-member classes: {}", self.multi_member_classes.len());
            for l in &self.multi_member_classes {
                let members: Vec<String> = l
                    .graphs
                    .iter()
                    .zip(&l.connected)
                    .map(|(g, c)| format!("{g}{}", if *c { "(C)" } else { "(D)" }))
                    .collect();
                let _ = writeln!(s, "    {}: {}", l.invariant, members.join(" "));
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}

use std::collections::BTreeMap;

use super::{pairs_within, Experiment, ExperimentContext, ExperimentError, Record, VerificationReport};
use crate::digest::Digest;

/// Splits `members` by the keys of `invariant`, keeping first-member order.
fn split_by(ctx: &ExperimentContext, invariant: &str, members: &[usize]) -> Vec<Vec<usize>> {
    let keys = ctx.profile().keys(invariant);
    let mut by_key: BTreeMap<Digest, Vec<usize>> = BTreeMap::new();
    for &i in members {
        by_key.entry(keys[i]).or_default().push(i);
    }
    let mut parts: Vec<Vec<usize>> = by_key.into_values().collect();
    parts.sort_unstable_by_key(|p| p[0]);
    parts
}

/// `wl(G)` determines `cor(G)`, `dcor(G)` and connectedness.
pub struct Hierarchy;

impl Experiment for Hierarchy {
    fn name(&self) -> &'static str {
        "hierarchy"
    }

    fn description(&self) -> &'static str {
        "wl2-equivalence implies cr-, dcr-equivalence and equal connectedness"
    }

    fn run(&self, ctx: &ExperimentContext) -> Result<VerificationReport, ExperimentError> {
        let mut report = ctx.report(self.name());
        let profile = ctx.profile();
        let wl2_classes = profile.classes("wl2");
        for class in wl2_classes.iter().filter(|c| c.len() > 1) {
            ctx.verify_class_exact("wl2", class)?;
            report.multi_member_classes.push(ctx.listing("wl2", class));
            let graphs: Vec<String> = class.iter().map(|&i| ctx.graph6(i)).collect();
            for (inv, what) in [("cr", "cor"), ("dcr", "dcor")] {
                if split_by(ctx, inv, class).len() > 1 {
                    report.violations.push(Record {
                        kind: format!("wl2-not-{inv}"),
                        graphs: graphs.clone(),
                        detail: format!("wl2-equivalent graphs with different {what}"),
                    });
                }
            }
            let conn = &ctx.corpus.connected;
            if class.iter().any(|&i| conn[i] != conn[class[0]]) {
                report.violations.push(Record {
                    kind: "wl2-not-connectedness".into(),
                    graphs,
                    detail: "wl2-equivalent graphs differ in connectedness".into(),
                });
            }
        }

        // equivalent pairs per invariant; the corpus holds one graph per
        // isomorphism type, so every counted pair is non-isomorphic
        for inv in ["wl2", "cr", "dcr"] {
            let classes = profile.classes(inv);
            for class in classes.iter().filter(|c| c.len() > 1) {
                ctx.verify_class_exact(inv, class)?;
            }
            report.metrics.insert(format!("{inv}_equivalent_pairs"), pairs_within(&classes));
        }
        let n = ctx.corpus.len() as u64;
        report.metrics.insert("pairs_tested".into(), n * n.saturating_sub(1) / 2);
        if report.metrics["wl2_equivalent_pairs"] == 0 {
            report.notes.push(
                "no non-isomorphic wl2-equivalent pairs at this order; the implications hold vacuously".into(),
            );
        }
        Ok(report)
    }
}

/// Lists non-isomorphic pairs with equal `dcor` but different `cor`.
pub struct OpenQuestionProbe;

impl Experiment for OpenQuestionProbe {
    fn name(&self) -> &'static str {
        "probe-openq"
    }

    fn description(&self) -> &'static str {
        "pairs with equal dcr invariants but different cr invariants"
    }

    fn run(&self, ctx: &ExperimentContext) -> Result<VerificationReport, ExperimentError> {
        let mut report = ctx.report(self.name());
        let dcr_classes = ctx.profile().classes("dcr");
        let cr = ctx.registry.get("cr").ok_or_else(|| ExperimentError::Unknown("cr".into()))?;
        let mut candidates = 0u64;
        for class in dcr_classes.iter().filter(|c| c.len() > 1) {
            ctx.verify_class_exact("dcr", class)?;
            report.multi_member_classes.push(ctx.listing("dcr", class));
            let parts = split_by(ctx, "cr", class);
            for part in parts.iter().filter(|p| p.len() > 1) {
                ctx.verify_class_exact("cr", part)?;
            }
            for (a, pa) in parts.iter().enumerate() {
                for pb in &parts[a + 1..] {
                    for &i in pa {
                        for &j in pb {
                            candidates += 1;
                            let (g, h) = (ctx.graph(i), ctx.graph(j));
                            if cr.equivalent_exact(g, h)? {
                                return Err(ExperimentError::Integrity(format!(
                                    "cr digests differ but exact comparison agrees for {} and {}",
                                    ctx.graph6(i),
                                    ctx.graph6(j)
                                )));
                            }
                            report.findings.push(Record {
                                kind: "dcr-not-cr".into(),
                                graphs: vec![ctx.graph6(i), ctx.graph6(j)],
                                detail: format!(
                                    "equal dcor, different cor; connected={}/{}",
                                    ctx.corpus.connected[i], ctx.corpus.connected[j]
                                ),
                            });
                        }
                    }
                }
            }
        }
        report.metrics.insert("dcr_equivalent_pairs".into(), pairs_within(&dcr_classes));
        report.metrics.insert("candidate_pairs_rechecked".into(), candidates);
        report.notes.push(format!(
            "{} pairs with equal dcor and different cor; reported, not asserted",
            report.findings.len()
        ));
        Ok(report)
    }
}

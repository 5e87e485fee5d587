use super::{ExperimentContext, ExperimentError, Experiment, Record, Verdict, VerificationReport};
use crate::deck::connected_card_count;

/// Whether `members` contain both connected and disconnected graphs.
fn mixes_connectedness(ctx: &ExperimentContext, members: &[usize]) -> bool {
    let conn = &ctx.corpus.connected;
    members.iter().any(|&i| conn[i]) && members.iter().any(|&i| !conn[i])
}

/// Connectedness is determined by the multiset of CR invariants of the
/// cards.
pub struct MainTheorem;

impl Experiment for MainTheorem {
    fn name(&self) -> &'static str {
        "main"
    }

    fn description(&self) -> &'static str {
        "every dcr class is homogeneous in connectedness"
    }

    fn run(&self, ctx: &ExperimentContext) -> Result<VerificationReport, ExperimentError> {
        let mut report = ctx.report(self.name());
        let profile = ctx.profile();
        let dcr_classes = profile.classes("dcr");
        let mut mixed = Vec::new();
        for class in dcr_classes.iter().filter(|c| c.len() > 1) {
            ctx.verify_class_exact("dcr", class)?;
            report.multi_member_classes.push(ctx.listing("dcr", class));
            if mixes_connectedness(ctx, class) {
                mixed.push(class.clone());
            }
        }

        let cr_classes = profile.classes("cr");
        let cr_mixed: Vec<&Vec<usize>> =
            cr_classes.iter().filter(|c| mixes_connectedness(ctx, c)).collect();
        let dcr = profile.keys("dcr");
        let cr_mixed_split = cr_mixed
            .iter()
            .filter(|c| {
                c.iter().all(|&i| {
                    c.iter().all(|&j| ctx.corpus.connected[i] == ctx.corpus.connected[j] || dcr[i] != dcr[j])
                })
            })
            .count();
        report.metrics.insert("connected_graphs".into(), ctx.corpus.connected_count() as u64);
        report.metrics.insert("dcr_multi_member_classes".into(), report.multi_member_classes.len() as u64);
        report.metrics.insert("cr_classes_mixing_connectedness".into(), cr_mixed.len() as u64);
        report.metrics.insert("cr_mixed_classes_split_by_dcr".into(), cr_mixed_split as u64);

        if ctx.corpus.order <= 2 {
            report.verdict = Verdict::OutOfScope;
            report.notes.push(
                "orders n <= 2 are outside the statement: K2 and 2K1 share the deck {K1, K1}".into(),
            );
            for class in mixed {
                report.findings.push(Record {
                    kind: "mixed-dcr-class".into(),
                    graphs: class.iter().map(|&i| ctx.graph6(i)).collect(),
                    detail: "out of scope".into(),
                });
            }
            return Ok(report);
        }
        for class in mixed {
            report.violations.push(Record {
                kind: "mixed-dcr-class".into(),
                graphs: class.iter().map(|&i| ctx.graph6(i)).collect(),
                detail: "connected and disconnected graphs share dcor".into(),
            });
        }
        Ok(report)
    }
}

/// Connectedness is determined by the deck of isomorphism types.
pub struct ExactDeckConnectedness;

impl Experiment for ExactDeckConnectedness {
    fn name(&self) -> &'static str {
        "harary"
    }

    fn description(&self) -> &'static str {
        "every exact-deck class is homogeneous in connectedness"
    }

    fn run(&self, ctx: &ExperimentContext) -> Result<VerificationReport, ExperimentError> {
        if ctx.corpus.order < 3 {
            return Err(ExperimentError::Domain(format!(
                "harary needs n >= 3, got {}",
                ctx.corpus.order
            )));
        }
        let mut report = ctx.report(self.name());
        let profile = ctx.profile();
        let dcr = profile.keys("dcr");
        for class in profile.classes("exact-deck") {
            if class.len() > 1 {
                ctx.verify_class_exact("exact-deck", &class)?;
                report.multi_member_classes.push(ctx.listing("exact-deck", &class));
                if mixes_connectedness(ctx, &class) {
                    report.violations.push(Record {
                        kind: "mixed-exact-deck-class".into(),
                        graphs: class.iter().map(|&i| ctx.graph6(i)).collect(),
                        detail: "connected and disconnected graphs share a deck".into(),
                    });
                }
            }
            if class.iter().any(|&i| dcr[i] != dcr[class[0]]) {
                report.violations.push(Record {
                    kind: "exact-deck-not-in-dcr-class".into(),
                    graphs: class.iter().map(|&i| ctx.graph6(i)).collect(),
                    detail: "equal exact decks with different dcor".into(),
                });
            }
        }
        report
            .metrics
            .insert("exact_deck_multi_member_classes".into(), report.multi_member_classes.len() as u64);
        Ok(report)
    }
}

/// `G` is connected iff at least two of its cards are connected.
pub struct LittleTheorem;

impl Experiment for LittleTheorem {
    fn name(&self) -> &'static str {
        "little"
    }

    fn description(&self) -> &'static str {
        "connected iff at least two connected cards"
    }

    fn run(&self, ctx: &ExperimentContext) -> Result<VerificationReport, ExperimentError> {
        if ctx.corpus.order < 3 {
            return Err(ExperimentError::Domain(format!(
                "little needs n >= 3; at n = 2 both cards of 2K1 are connected (got n = {})",
                ctx.corpus.order
            )));
        }
        let mut report = ctx.report(self.name());
        let mut histogram = std::collections::BTreeMap::new();
        for (i, g) in ctx.corpus.graphs.iter().enumerate() {
            let count = connected_card_count(g).map_err(|e| ExperimentError::Domain(e.to_string()))?;
            *histogram.entry(count).or_insert(0u64) += 1;
            if ctx.corpus.connected[i] != (count >= 2) {
                report.violations.push(Record {
                    kind: "little-theorem".into(),
                    graphs: vec![ctx.graph6(i)],
                    detail: format!(
                        "connected={} with {count} connected cards",
                        ctx.corpus.connected[i]
                    ),
                });
            }
        }
        for (count, graphs) in histogram {
            report.metrics.insert(format!("graphs_with_{count}_connected_cards"), graphs);
        }
        Ok(report)
    }
}

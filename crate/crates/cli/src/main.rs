//! `crlab`: command-line frontend for the crlab graph-invariant library.
//!
//! Exit codes: 0 success or PASS, 1 violations or findings that need
//! attention, 2 usage errors, 3 resource-guard and integrity failures.

mod input;

use std::fmt::Write as _;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crlab::covers::{ahu_code, unfold_with_guard, CoverError, DEFAULT_NODE_GUARD};
use crlab::deck::{connectedness_from_deck, dcr_invariant, deck, Connectivity, DeckError, DeckIndex, DeckInvariant};
use crlab::enumerate::{cached_corpus, load_corpus_graph6, Corpus, CorpusError};
use crlab::experiments::{ExperimentError, ExperimentRegistry, Verdict, VerificationReport};
use crlab::invariant::{InvariantRegistry, Mode};
use crlab::io::{emit_graph6, tree_to_dot};
use crlab::refine::{cr_invariant, cr_similar, exact_joint_refine, refine_to_stable, RefineError};
use crlab::wl2::wl2_invariant;
use crlab::{Graph, VERSION_TAG};

#[derive(Parser)]
#[command(name = "crlab", version, about = "Color refinement, deck invariants and 2-WL on small graphs")]
struct Cli {
    /// Comparison mode: content digests or exact joint refinement
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Digest)]
    mode: ModeArg,

    /// Output format: human-readable text or one JSON document per line
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<NonZeroUsize>,

    /// Corpus file (graph6/sparse6 lines) used instead of the built-in enumeration
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,

    /// Directory caching enumerated corpora [default: ~/.cache/crlab]
    #[arg(long, global = true, env = "CRLAB_CORPUS_DIR")]
    cache_dir: Option<PathBuf>,

    /// Maximum number of nodes of an unfolding tree
    #[arg(long, global = true, default_value_t = NonZeroUsize::new(DEFAULT_NODE_GUARD).unwrap())]
    guard_nodes: NonZeroUsize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Digest,
    Exact,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Main,
    Harary,
    Hierarchy,
    Little,
}

impl VerifyKind {
    fn experiment(self) -> &'static str {
        match self {
            VerifyKind::Main => "main",
            VerifyKind::Harary => "harary",
            VerifyKind::Hierarchy => "hierarchy",
            VerifyKind::Little => "little",
        }
    }
}

/// Graph arguments are built-in names (C6, 2C3, P5, K4, bowtie, ...),
/// inline graph6/sparse6 tokens, files, or `-` for stdin.
#[derive(Subcommand)]
enum Command {
    /// Dump the stable coloring of every vertex
    Refine {
        #[arg(required = true)]
        graphs: Vec<String>,
    },
    /// Dump cor(G), the multiset of color refinement colors
    Cr {
        #[arg(required = true)]
        graphs: Vec<String>,
    },
    /// Dump dcor(G), the multiset of cor of the cards
    Dcr {
        #[arg(required = true)]
        graphs: Vec<String>,
    },
    /// Dump the 2-WL pair color multiset
    Wl2 {
        #[arg(required = true)]
        graphs: Vec<String>,
    },
    /// Compare two graphs under iso, cr, dcr, wl2 and CR-similarity
    Compare { g: String, h: String },
    /// List the cards of a graph as graph6
    Deck { graph: String },
    /// Depth-r unfolding of G from vertex x, as DOT
    Unfold {
        graph: String,
        vertex: usize,
        depth: Option<usize>,
        #[arg(long = "depth", conflicts_with = "depth")]
        depth_flag: Option<usize>,
    },
    /// Blocks and cut vertices
    Blockcut {
        #[arg(required = true)]
        graphs: Vec<String>,
    },
    /// All graphs of order n up to isomorphism, as graph6
    Enumerate {
        n: Option<usize>,
        #[arg(long = "n", conflicts_with = "n")]
        n_flag: Option<usize>,
    },
    /// Decide connectedness from a deck by corpus lookup
    ClassifyDeck {
        /// The cards (all of the same order)
        #[arg(required = true)]
        cards: Vec<String>,
        /// Deck-index file written by `deck-index`
        #[arg(long)]
        index: Option<PathBuf>,
    },
    /// Write the deck index of a corpus
    DeckIndex {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Verify a theorem over a whole corpus
    Verify {
        kind: VerifyKind,
        #[arg(long)]
        n: Option<usize>,
    },
    /// List pairs with equal dcor but different cor
    ProbeOpenq {
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Runtime(_) => 3,
        }
    }
}

impl From<RefineError> for Failure {
    fn from(e: RefineError) -> Self {
        match e {
            RefineError::BatchOverflow(_) => {
                Failure::Usage(format!("{e}; use --mode digest for larger inputs"))
            }
            RefineError::VertexOutOfRange { .. } => Failure::Usage(e.to_string()),
        }
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::VertexOutOfRange { .. } => Failure::Usage(e.to_string()),
            CoverError::NodeGuard { .. } => Failure::Runtime(format!("{e}; raise --guard-nodes")),
            CoverError::Refine(e) => e.into(),
        }
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<DeckError> for Failure {
    fn from(e: DeckError) -> Self {
        match e {
            DeckError::Integrity { .. } => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Corpus(e) => e.into(),
            ExperimentError::Domain(_) | ExperimentError::Unknown(_) => Failure::Usage(e.to_string()),
            ExperimentError::Integrity(_) | ExperimentError::Refine(_) => Failure::Runtime(e.to_string()),
        }
    }
}

/// Whether the command found something that needs attention.
type Outcome = Result<bool, Failure>;

struct Ctx {
    mode: Mode,
    format: Format,
    corpus: Option<PathBuf>,
    cache_dir: Option<PathBuf>,
    guard_nodes: usize,
    out: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // fails only if a pool exists already, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.get()).build_global();
    }
    let mut ctx = Ctx {
        mode: match cli.mode {
            ModeArg::Digest => Mode::Digest,
            ModeArg::Exact => Mode::Exact,
        },
        format: cli.format,
        corpus: cli.corpus,
        cache_dir: cli.cache_dir.or_else(default_cache_dir),
        guard_nodes: cli.guard_nodes.get(),
        out: String::new(),
    };
    let result = run(&mut ctx, cli.command);
    print!("{}", ctx.out);
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(f) => {
            let (Failure::Usage(msg) | Failure::Runtime(msg)) = &f;
            eprintln!("crlab: {msg}");
            ExitCode::from(f.code())
        }
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("crlab"))
}

fn run(ctx: &mut Ctx, command: Command) -> Outcome {
    match command {
        Command::Refine { graphs } => refine(ctx, &input::all_graphs(&graphs)?),
        Command::Cr { graphs } => cr(ctx, &input::all_graphs(&graphs)?),
        Command::Dcr { graphs } => dcr(ctx, &input::all_graphs(&graphs)?),
        Command::Wl2 { graphs } => wl2(ctx, &input::all_graphs(&graphs)?),
        Command::Compare { g, h } => compare(ctx, &input::graph(&g)?.1, &input::graph(&h)?.1),
        Command::Deck { graph } => show_deck(ctx, &input::graph(&graph)?.1),
        Command::Unfold { graph, vertex, depth, depth_flag } => {
            let depth = depth.or(depth_flag).ok_or_else(|| {
                Failure::Usage("unfold needs a depth: `unfold G x r` or --depth r".into())
            })?;
            unfold(ctx, &input::graph(&graph)?.1, vertex, depth)
        }
        Command::Blockcut { graphs } => blockcut(ctx, &input::all_graphs(&graphs)?),
        Command::Enumerate { n, n_flag } => enumerate(ctx, n.or(n_flag)),
        Command::ClassifyDeck { cards, index } => {
            classify_deck(ctx, &input::all_graphs(&cards)?, index.as_deref())
        }
        Command::DeckIndex { n } => {
            let corpus = load_corpus(ctx, n)?;
            ctx.out.push_str(&DeckIndex::from_graphs(corpus.order, &corpus.graphs).to_text());
            Ok(false)
        }
        Command::Verify { kind, n } => experiment(ctx, kind.experiment(), n),
        Command::ProbeOpenq { n } => experiment(ctx, "probe-openq", n),
    }
}

fn g6(g: &Graph) -> Result<String, Failure> {
    emit_graph6(g).map_err(|e| Failure::Usage(e.to_string()))
}

fn dump_header(ctx: &mut Ctx) {
    if ctx.format == Format::Text {
        let _ = writeln!(ctx.out, "#crlab-dump version={VERSION_TAG} mode={}", ctx.mode);
    }
}

fn dump_line(ctx: &mut Ctx, tag: &str, graph6: &str, round: usize, values: &[String]) {
    match ctx.format {
        Format::Text => {
            let _ = writeln!(ctx.out, "{tag}\t{graph6}\t{round}\t{}", values.join(" "));
        }
        Format::Structured => {
            let doc = json!({
                "record": tag,
                "version": VERSION_TAG,
                "mode": ctx.mode.to_string(),
                "graph6": graph6,
                "round": round,
                "colors": values,
            });
            let _ = writeln!(ctx.out, "{doc}");
        }
    }
}

/// Exact colors of every graph of the batch, comparable across the batch.
fn joint_stable(gs: &[Graph]) -> Result<(usize, Vec<Vec<u32>>), Failure> {
    let joint = exact_joint_refine(gs)?;
    let colors = (0..gs.len()).map(|i| joint.stable_colors(i).to_vec()).collect();
    Ok((joint.stable_round(), colors))
}

fn numbers(xs: &[u32]) -> Vec<String> {
    xs.iter().map(u32::to_string).collect()
}

fn refine(ctx: &mut Ctx, gs: &[(String, Graph)]) -> Outcome {
    dump_header(ctx);
    match ctx.mode {
        Mode::Digest => {
            for (_, g) in gs {
                let rounds = refine_to_stable(g);
                let last = rounds.last().expect("round 0 always present");
                let hex: Vec<String> = last.colors.iter().map(|c| c.0.to_hex()).collect();
                dump_line(ctx, "refine", &g6(g)?, last.round, &hex);
            }
        }
        Mode::Exact => {
            let graphs: Vec<Graph> = gs.iter().map(|(_, g)| g.clone()).collect();
            let (round, colors) = joint_stable(&graphs)?;
            for (g, c) in graphs.iter().zip(&colors) {
                dump_line(ctx, "refine", &g6(g)?, round, &numbers(c));
            }
        }
    }
    Ok(false)
}

fn cr(ctx: &mut Ctx, gs: &[(String, Graph)]) -> Outcome {
    dump_header(ctx);
    match ctx.mode {
        Mode::Digest => {
            for (_, g) in gs {
                let inv = cr_invariant(g);
                let hex: Vec<String> = inv.colors.iter().map(|c| c.0.to_hex()).collect();
                let stable = refine_to_stable(g).len() - 1;
                dump_line(ctx, "cr", &g6(g)?, stable, &hex);
            }
        }
        Mode::Exact => {
            let graphs: Vec<Graph> = gs.iter().map(|(_, g)| g.clone()).collect();
            let (round, colors) = joint_stable(&graphs)?;
            for (g, mut c) in graphs.iter().zip(colors) {
                c.sort_unstable();
                dump_line(ctx, "cr", &g6(g)?, round, &numbers(&c));
            }
        }
    }
    Ok(false)
}

fn dcr(ctx: &mut Ctx, gs: &[(String, Graph)]) -> Outcome {
    dump_header(ctx);
    match ctx.mode {
        Mode::Digest => {
            for (_, g) in gs {
                let inv = dcr_invariant(g);
                let hex: Vec<String> = inv.cards.iter().map(|c| c.fingerprint().to_hex()).collect();
                dump_line(ctx, "dcr", &g6(g)?, inv.card_order, &hex);
            }
        }
        Mode::Exact => {
            // every card of every graph in one joint refinement; each card
            // is shown as its sorted multiset, the cards sorted
            let decks: Vec<Vec<Graph>> = gs.iter().map(|(_, g)| deck(g)).collect();
            let cards: Vec<Graph> = decks.iter().flatten().cloned().collect();
            let (round, colors) = joint_stable(&cards)?;
            let mut at = 0;
            for ((_, g), d) in gs.iter().zip(&decks) {
                let mut multisets: Vec<Vec<u32>> = colors[at..at + d.len()]
                    .iter()
                    .map(|c| {
                        let mut c = c.clone();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                at += d.len();
                multisets.sort();
                let values: Vec<String> = multisets.iter().map(|m| format!("[{}]", numbers(m).join(","))).collect();
                dump_line(ctx, "dcr", &g6(g)?, round, &values);
            }
        }
    }
    Ok(false)
}

fn wl2(ctx: &mut Ctx, gs: &[(String, Graph)]) -> Outcome {
    if ctx.mode == Mode::Exact {
        return Err(Failure::Usage(
            "exact 2-WL colors exist only for a pair of graphs; use `compare G H --mode exact`".into(),
        ));
    }
    dump_header(ctx);
    for (_, g) in gs {
        let inv = wl2_invariant(g);
        let hex: Vec<String> = inv.colors.iter().map(|c| c.0.to_hex()).collect();
        dump_line(ctx, "wl2", &g6(g)?, inv.rounds, &hex);
    }
    Ok(false)
}

fn compare(ctx: &mut Ctx, g: &Graph, h: &Graph) -> Outcome {
    let registry = InvariantRegistry::builtin();
    let mut verdicts = Vec::new();
    for name in ["iso", "cr", "dcr", "wl2"] {
        let inv = registry.get(name).expect("built-in invariant");
        verdicts.push((name, inv.equivalent(g, h, ctx.mode)?));
    }
    verdicts.push(("similar", cr_similar(g, h)?));
    match ctx.format {
        Format::Text => {
            let parts: Vec<String> = verdicts.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            let _ = writeln!(ctx.out, "{}", parts.join(" "));
        }
        Format::Structured => {
            let mut doc = serde_json::Map::new();
            doc.insert("record".into(), json!("compare"));
            doc.insert("mode".into(), json!(ctx.mode.to_string()));
            doc.insert("g".into(), json!(g6(g)?));
            doc.insert("h".into(), json!(g6(h)?));
            for (k, v) in verdicts {
                doc.insert(k.into(), json!(v));
            }
            let _ = writeln!(ctx.out, "{}", serde_json::Value::Object(doc));
        }
    }
    Ok(false)
}

fn show_deck(ctx: &mut Ctx, g: &Graph) -> Outcome {
    for (v, card) in deck(g).iter().enumerate() {
        let card6 = g6(card)?;
        let canon = g6(card.canonical_form().graph())?;
        match ctx.format {
            Format::Text => {
                let _ = writeln!(ctx.out, "{v}\t{card6}\t{canon}");
            }
            Format::Structured => {
                let doc = json!({"record": "card", "vertex": v, "graph6": card6, "canonical": canon});
                let _ = writeln!(ctx.out, "{doc}");
            }
        }
    }
    Ok(false)
}

fn unfold(ctx: &mut Ctx, g: &Graph, x: usize, depth: usize) -> Outcome {
    let tree = unfold_with_guard(g, x, depth, ctx.guard_nodes)?;
    match ctx.format {
        Format::Text => {
            let _ = writeln!(ctx.out, "// nodes={} depth={depth} root={x}", tree.node_count());
            ctx.out.push_str(&tree_to_dot(&tree, &format!("U{depth}_{x}")));
        }
        Format::Structured => {
            let code = String::from_utf8(ahu_code(&tree).0).expect("AHU codes are ASCII");
            let doc = json!({
                "record": "unfold",
                "root": x,
                "depth": depth,
                "nodes": tree.node_count(),
                "dot": tree_to_dot(&tree, &format!("U{depth}_{x}")),
                "ahu": code,
            });
            let _ = writeln!(ctx.out, "{doc}");
        }
    }
    Ok(false)
}

fn blockcut(ctx: &mut Ctx, gs: &[(String, Graph)]) -> Outcome {
    for (_, g) in gs {
        let t = g.block_cut_tree();
        let graph6 = g6(g)?;
        match ctx.format {
            Format::Text => {
                let blocks: Vec<String> = t.blocks.iter().map(|b| b.to_string()).collect();
                let inc: Vec<String> = t.incidence.iter().map(|(b, c)| format!("B{b}-{c}")).collect();
                let leaves: Vec<String> = t.leaf_blocks.iter().map(|b| format!("B{b}")).collect();
                let _ = writeln!(ctx.out, "graph {graph6}");
                let _ = writeln!(ctx.out, "  blocks: {}", blocks.join(" "));
                let _ = writeln!(ctx.out, "  cut-vertices: {}", t.cut_vertices);
                let _ = writeln!(ctx.out, "  incidence: {}", inc.join(" "));
                let _ = writeln!(ctx.out, "  leaf-blocks: {}", leaves.join(" "));
            }
            Format::Structured => {
                let doc = json!({
                    "record": "blockcut",
                    "graph6": graph6,
                    "blocks": t.blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>(),
                    "cut_vertices": t.cut_vertices.to_vec(),
                    "incidence": t.incidence,
                    "leaf_blocks": t.leaf_blocks,
                });
                let _ = writeln!(ctx.out, "{doc}");
            }
        }
    }
    Ok(false)
}

fn load_corpus(ctx: &Ctx, n: Option<usize>) -> Result<Corpus, Failure> {
    if let Some(path) = &ctx.corpus {
        let corpus = load_corpus_graph6(path)?;
        if let Some(n) = n {
            if n != corpus.order {
                return Err(Failure::Usage(format!(
                    "--n {n} disagrees with the corpus file, which holds graphs of order {}",
                    corpus.order
                )));
            }
        }
        return Ok(corpus);
    }
    let n = n.ok_or_else(|| Failure::Usage("an order is required: pass --n N or --corpus FILE".into()))?;
    Ok(cached_corpus(n, ctx.cache_dir.as_deref())?)
}

fn enumerate(ctx: &mut Ctx, n: Option<usize>) -> Outcome {
    let n = n.ok_or_else(|| Failure::Usage("enumerate needs an order: `enumerate N`".into()))?;
    let corpus = cached_corpus(n, ctx.cache_dir.as_deref())?;
    match ctx.format {
        Format::Text => ctx.out.push_str(&corpus.to_graph6_text()),
        Format::Structured => {
            for (g, c) in corpus.graphs.iter().zip(&corpus.connected) {
                let doc = json!({"graph6": g6(g)?, "edges": g.edge_count(), "connected": c});
                let _ = writeln!(ctx.out, "{doc}");
            }
        }
    }
    Ok(false)
}

fn classify_deck(ctx: &mut Ctx, cards: &[(String, Graph)], index: Option<&Path>) -> Outcome {
    let cards: Vec<Graph> = cards.iter().map(|(_, g)| g.clone()).collect();
    let d = DeckInvariant::from_cards(&cards)?;
    let index = match index {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            DeckIndex::parse(&text)?
        }
        None => {
            let corpus = load_corpus(ctx, Some(d.card_order + 1))?;
            DeckIndex::from_graphs(corpus.order, &corpus.graphs)
        }
    };
    let verdict = connectedness_from_deck(&d, &index)?;
    match ctx.format {
        Format::Text => {
            let _ = writeln!(ctx.out, "{verdict}");
        }
        Format::Structured => {
            let doc = json!({
                "record": "classify-deck",
                "cards": cards.len(),
                "order": d.card_order + 1,
                "verdict": verdict.to_string(),
            });
            let _ = writeln!(ctx.out, "{doc}");
        }
    }
    Ok(verdict == Connectivity::Unknown)
}

fn experiment(ctx: &mut Ctx, name: &str, n: Option<usize>) -> Outcome {
    let corpus = load_corpus(ctx, n)?;
    let report: VerificationReport =
        ExperimentRegistry::builtin().run(name, &corpus, &InvariantRegistry::builtin())?;
    match ctx.format {
        Format::Text => ctx.out.push_str(&report.to_text()),
        Format::Structured => {
            let _ = writeln!(ctx.out, "{}", report.to_json_line());
        }
    }
    Ok(match report.verdict {
        Verdict::Fail => true,
        Verdict::Pass => !report.findings.is_empty(),
        Verdict::OutOfScope => false,
    })
}

//! Complete lists of pairwise non-isomorphic graphs of a fixed order.
//!
//! Orders up to 7 come from iterating every upper-triangle bitmask whose
//! degree sequence is non-increasing (every class has such a labeling) and
//! deduplicating by canonical form. Order 8 grows the corpus edge by edge
//! from the edgeless graph, keeping the canonical representative of every
//! one-edge extension. Larger corpora are read from graph6 files.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::io::{emit_graph6, parse_graph_line, ParseError};

pub const MAX_BUILTIN_ORDER: usize = 8;
const BITMASK_LIMIT: usize = 7;

pub const BITMASK_GENERATOR: &str = "crlab-bitmask-v1";
pub const AUGMENT_GENERATOR: &str = "crlab-augment-v1";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("built-in enumeration covers orders 1..={MAX_BUILTIN_ORDER}, got {0}")]
    OrderOutOfRange(usize),
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("line {line}: order {found} differs from the corpus order {expected}")]
    MixedOrder { line: usize, expected: usize, found: usize },
    #[error("corpus header announces {expected} graphs, file holds {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("corpus file is empty")]
    Empty,
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Produced by this crate's generators; complete by construction.
    Builtin,
    /// Read from a file; completeness is taken on trust.
    External,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Builtin => "builtin",
            Provenance::External => "external",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub order: usize,
    /// Canonical forms, sorted by edge count and then canonical order.
    pub graphs: Vec<Graph>,
    pub connected: Vec<bool>,
    pub provenance: Provenance,
    pub generator: String,
    /// Duplicate isomorphism classes dropped while loading.
    pub duplicates_dropped: usize,
}

impl Corpus {
    fn from_classes(order: usize, classes: BTreeSet<(usize, Graph)>, generator: &str) -> Corpus {
        let graphs: Vec<Graph> = classes.into_iter().map(|(_, g)| g).collect();
        let connected = graphs.iter().map(Graph::is_connected).collect();
        Corpus {
            order,
            graphs,
            connected,
            provenance: Provenance::Builtin,
            generator: generator.to_string(),
            duplicates_dropped: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn connected_count(&self) -> usize {
        self.connected.iter().filter(|&&c| c).count()
    }

    /// Corpus file contents: a header line, then one graph6 line per graph.
    pub fn to_graph6_text(&self) -> String {
        let mut s = format!(
            "#crlab-corpus order={} count={} generator={}\n",
            self.order,
            self.len(),
            self.generator
        );
        for g in &self.graphs {
            s.push_str(&emit_graph6(g).expect("corpus orders fit graph6"));
            s.push('\n');
        }
        s
    }
}

pub fn enumerate_graphs(n: usize) -> Result<Corpus, CorpusError> {
    match n {
        1..=BITMASK_LIMIT => Ok(by_bitmask(n)),
        8 => Ok(by_augmentation(n)),
        _ => Err(CorpusError::OrderOutOfRange(n)),
    }
}

fn keyed(g: &Graph) -> (usize, Graph) {
    let c = g.canonical_form().into_graph();
    (c.edge_count(), c)
}

fn by_bitmask(n: usize) -> Corpus {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let masks = 1u64 << pairs.len();
    let chunk = 1u64 << 12;
    let classes: BTreeSet<(usize, Graph)> = (0..masks.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut local = BTreeSet::new();
            let mut deg = [0u8; 64];
            for mask in c * chunk..((c + 1) * chunk).min(masks) {
                deg[..n].fill(0);
                let mut m = mask;
                while m != 0 {
                    let (i, j) = pairs[m.trailing_zeros() as usize];
                    deg[i] += 1;
                    deg[j] += 1;
                    m &= m - 1;
                }
                if deg[..n].windows(2).all(|w| w[0] >= w[1]) {
                    let g = Graph::from_upper_triangle(n, mask).expect("n <= 7");
                    local.insert(keyed(&g));
                }
            }
            local
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Corpus::from_classes(n, classes, BITMASK_GENERATOR)
}

fn by_augmentation(n: usize) -> Corpus {
    let mut level: BTreeSet<(usize, Graph)> = BTreeSet::new();
    level.insert((0, Graph::new(n).expect("valid order")));
    let mut all = level.clone();
    let full = n * (n - 1) / 2;
    for _ in 0..full {
        let prev: Vec<Graph> = level.iter().map(|(_, g)| g.clone()).collect();
        level = prev
            .par_iter()
            .map(|g| {
                let mut out = BTreeSet::new();
                for j in 1..n {
                    for i in 0..j {
                        if !g.has_edge(i, j) {
                            let mut h = g.clone();
                            h.add_edge(i, j).expect("non-edge");
                            out.insert(keyed(&h));
                        }
                    }
                }
                out
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        all.extend(level.iter().cloned());
    }
    Corpus::from_classes(n, all, AUGMENT_GENERATOR)
}

/// Parses a corpus file: graph6 or sparse6 lines, optionally preceded by a
/// `#crlab-corpus` header. Blank lines and other `#` lines are skipped.
pub fn parse_corpus(text: &str) -> Result<Corpus, CorpusError> {
    let mut order: Option<usize> = None;
    let mut announced: Option<usize> = None;
    let mut generator: Option<String> = None;
    let mut classes = BTreeSet::new();
    let mut lines = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(header) = line.strip_prefix("#crlab-corpus") {
            for field in header.split_whitespace() {
                if let Some(v) = field.strip_prefix("count=") {
                    announced = v.parse().ok();
                } else if let Some(v) = field.strip_prefix("generator=") {
                    generator = Some(v.to_string());
                }
            }
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g = parse_graph_line(line).map_err(|source| CorpusError::Parse { line: i + 1, source })?;
        let expected = *order.get_or_insert(g.order());
        if g.order() != expected {
            return Err(CorpusError::MixedOrder { line: i + 1, expected, found: g.order() });
        }
        lines += 1;
        classes.insert(keyed(&g));
    }
    let order = order.ok_or(CorpusError::Empty)?;
    if let Some(expected) = announced {
        if expected != lines {
            return Err(CorpusError::CountMismatch { expected, found: lines });
        }
    }
    let builtin = matches!(generator.as_deref(), Some(BITMASK_GENERATOR | AUGMENT_GENERATOR));
    let dropped = lines - classes.len();
    let mut corpus =
        Corpus::from_classes(order, classes, generator.as_deref().unwrap_or("external"));
    if !builtin {
        corpus.provenance = Provenance::External;
    }
    corpus.duplicates_dropped = dropped;
    Ok(corpus)
}

pub fn load_corpus_graph6(path: &Path) -> Result<Corpus, CorpusError> {
    let text = fs::read_to_string(path)
        .map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })?;
    parse_corpus(&text)
}

pub fn cache_file(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("graphs-n{n}.g6"))
}

/// Built-in corpus of order `n`, read from `cache_dir` when a matching
/// cache file exists and written there otherwise.
pub fn cached_corpus(n: usize, cache_dir: Option<&Path>) -> Result<Corpus, CorpusError> {
    let Some(dir) = cache_dir else {
        return enumerate_graphs(n);
    };
    if !(1..=MAX_BUILTIN_ORDER).contains(&n) {
        return Err(CorpusError::OrderOutOfRange(n));
    }
    let path = cache_file(dir, n);
    if let Ok(corpus) = load_corpus_graph6(&path) {
        if corpus.provenance == Provenance::Builtin && corpus.order == n {
            return Ok(corpus);
        }
    }
    let corpus = enumerate_graphs(n)?;
    // a cache that cannot be written is not an error
    if fs::create_dir_all(dir).is_ok() {
        let _ = fs::write(&path, corpus.to_graph6_text());
    }
    Ok(corpus)
}

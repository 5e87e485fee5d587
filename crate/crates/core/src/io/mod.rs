//! Interchange formats: graph6 (read/write), sparse6 (read), a plain edge
//! list, and DOT output.
//!
//! graph6 follows the public format definition: a header byte `n + 63`
//! followed by the upper triangle of the adjacency matrix in column-major
//! order `x(0,1), x(0,2), x(1,2), x(0,3), ...`, packed six bits per byte
//! (most significant first), zero padded, each byte offset by 63. Only the
//! single-byte header (`n <= 62`) is supported.

mod dot;
mod graph6;
mod sparse6;

use thiserror::Error;

pub use dot::{graph_to_dot, tree_to_dot};
pub use graph6::{emit_graph6, parse_graph6};
pub use sparse6::parse_sparse6;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("byte {byte:#04x} at offset {offset} outside the printable range 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("payload truncated at offset {offset}: expected {expected} bytes after the header")]
    Truncated { offset: usize, expected: usize },
    #[error("unexpected trailing data at offset {offset}")]
    TrailingData { offset: usize },
    #[error("nonzero padding bits in the byte at offset {offset}")]
    NonzeroPadding { offset: usize },
    #[error("order {order} unsupported at offset {offset} (single-byte header only, n <= 62)")]
    OrderUnsupported { offset: usize, order: usize },
    #[error("empty input")]
    Empty,
    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("invalid graph at offset {offset}: {source}")]
    Graph { offset: usize, source: GraphError },
}

impl ParseError {
    /// Byte offset the error refers to, when there is one.
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::ByteOutOfRange { offset, .. }
            | ParseError::Truncated { offset, .. }
            | ParseError::TrailingData { offset }
            | ParseError::NonzeroPadding { offset }
            | ParseError::OrderUnsupported { offset, .. }
            | ParseError::Graph { offset, .. } => Some(*offset),
            ParseError::Empty | ParseError::EdgeList { .. } => None,
        }
    }
}

/// Parses a graph6 or sparse6 line, choosing by the leading `:`.
pub fn parse_graph_line(line: &str) -> Result<Graph, ParseError> {
    let line = line.trim_end_matches(['\r', '\n']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    if let Some(rest) = line.strip_prefix(">>sparse6<<") {
        return parse_sparse6(rest);
    }
    if line.starts_with(':') {
        parse_sparse6(line)
    } else {
        parse_graph6(line)
    }
}

/// Parses the edge-list format: the order on the first line, then one
/// whitespace-separated `u v` pair per line. Blank lines and `#` comments
/// are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or(ParseError::Empty)?;
    let err = |line: usize, message: String| ParseError::EdgeList { line, message };
    let n: usize = header
        .parse()
        .map_err(|_| err(first, format!("expected a vertex count, found {header:?}")))?;
    let mut g = Graph::new(n).map_err(|e| err(first, e.to_string()))?;
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(err(line, format!("expected two vertex indices, found {l:?}")));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|_| err(line, format!("bad vertex index {s:?}")));
        let (u, v) = (parse(u)?, parse(v)?);
        g.add_edge(u, v).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(g)
}

use std::fs;
use std::io::Read;
use std::path::Path;

use crlab::io::{parse_edge_list, parse_graph_line};
use crlab::Graph;

use crate::Failure;

/// Resolves one command-line graph argument: a named built-in (`C6`,
/// `2C3`, `bowtie`, ...), an inline graph6 or sparse6 token, `-` for
/// stdin, or a file path. Files hold graph6/sparse6 lines or an edge list
/// whose first line is the order.
pub fn graphs(arg: &str) -> Result<Vec<(String, Graph)>, Failure> {
    if let Some(g) = Graph::named(arg) {
        return Ok(vec![(arg.to_string(), g)]);
    }
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        return parse_text(&text, "stdin");
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
        return parse_text(&text, arg);
    }
    match parse_graph_line(arg) {
        Ok(g) => Ok(vec![(arg.to_string(), g)]),
        Err(e) => Err(Failure::Usage(format!(
            "{arg:?} is not a built-in name, a file, or a valid graph6/sparse6 token ({e})"
        ))),
    }
}

fn parse_text(text: &str, source: &str) -> Result<Vec<(String, Graph)>, Failure> {
    let mut content = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let first = content.next().ok_or_else(|| Failure::Usage(format!("{source}: no graphs")))?;
    if first.bytes().all(|b| b.is_ascii_digit()) {
        let g = parse_edge_list(text).map_err(|e| Failure::Usage(format!("{source}: {e}")))?;
        return Ok(vec![(source.to_string(), g)]);
    }
    let mut out = Vec::new();
    for (i, line) in std::iter::once(first).chain(content).enumerate() {
        let g = parse_graph_line(line)
            .map_err(|e| Failure::Usage(format!("{source}: graph {}: {e}", i + 1)))?;
        out.push((line.to_string(), g));
    }
    Ok(out)
}

/// Exactly one graph.
pub fn graph(arg: &str) -> Result<(String, Graph), Failure> {
    let mut gs = graphs(arg)?;
    if gs.len() != 1 {
        return Err(Failure::Usage(format!("{arg}: expected one graph, found {}", gs.len())));
    }
    Ok(gs.remove(0))
}

/// All graphs named by `args`, in order.
pub fn all_graphs(args: &[String]) -> Result<Vec<(String, Graph)>, Failure> {
    let mut out = Vec::new();
    for a in args {
        out.extend(graphs(a)?);
    }
    Ok(out)
}

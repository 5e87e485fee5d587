use std::fmt::Write;

use crate::covers::UnfoldingTree;
use crate::graph::Graph;

pub fn graph_to_dot(g: &Graph, name: &str) -> String {
    let mut s = format!("graph {} {{\n", quote(name));
    for v in 0..g.order() {
        let _ = writeln!(s, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

/// Unfolding tree with each node labeled by its base-graph vertex.
pub fn tree_to_dot(t: &UnfoldingTree, name: &str) -> String {
    let mut s = format!("graph {} {{\n", quote(name));
    for (i, node) in t.nodes().iter().enumerate() {
        let shape = if i == 0 { ", shape=doublecircle" } else { "" };
        let _ = writeln!(s, "  n{i} [label=\"{}\"{shape}];", node.vertex);
    }
    for (i, node) in t.nodes().iter().enumerate() {
        if let Some(p) = node.parent {
            let _ = writeln!(s, "  n{p} -- n{i};");
        }
    }
    s.push_str("}\n");
    s
}

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

use std::fmt::Write;

use crate::graph::{NodeKind, PsmGraph};

pub fn kind_color(kind: NodeKind) -> &'static str {
    match kind {
        NodeKind::Structural => "grey",
        NodeKind::Capture => "lightblue",
        NodeKind::Fact => "green",
        NodeKind::Signal => "orange",
        NodeKind::Action => "red",
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Nodes in id order, edges in graph order, so equal graphs give equal bytes.
pub fn export_dot(g: &PsmGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(&g.meta.scenario));
    out.push_str("  node [shape=box, style=filled];\n");
    for (id, node) in g.nodes() {
        let _ = writeln!(
            out,
            "  {} [label={}, fillcolor={}];",
            quote(id.as_str()),
            quote(&node.term.to_string()),
            kind_color(node.kind)
        );
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(e.from.as_str()),
            quote(e.to.as_str()),
            quote(&format!("{}#{}", e.rule, e.application))
        );
    }
    out.push_str("}\n");
    out
}

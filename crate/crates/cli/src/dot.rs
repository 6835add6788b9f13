//! Graphviz export of the call graph.

use std::collections::HashMap;
use std::fmt::Write as _;

use termite_core::checker::CallGraph;
use termite_core::extract::Call;

/// Renders the graph as a `digraph`: one node per function, one edge per
/// call labeled with its matrix (row-major, one bracket group per row).
/// Nodes appear in declaration order, edges sorted by caller, callee and
/// matrix. Functions sharing a display name get `#2`, `#3`, ... suffixes.
pub fn export_dot(graph: &CallGraph) -> String {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    let mut node_ids: Vec<String> = Vec::new();
    for vertex in graph.vertices() {
        let n = counts.entry(vertex.name.as_str()).or_insert(0);
        *n += 1;
        if *n == 1 {
            node_ids.push(vertex.name.clone());
        } else {
            node_ids.push(format!("{}#{}", vertex.name, n));
        }
    }

    let mut out = String::from("digraph calls {\n");
    for id in &node_ids {
        let _ = writeln!(out, "  \"{}\";", id);
    }
    let mut edges: Vec<&Call> = graph.edges().iter().collect();
    edges.sort_by(|a, b| {
        (a.caller, a.callee, &a.matrix).cmp(&(b.caller, b.callee, &b.matrix))
    });
    for edge in edges {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            node_ids[edge.caller.0], node_ids[edge.callee.0], edge.matrix
        );
    }
    out.push_str("}\n");
    out
}

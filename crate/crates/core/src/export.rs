//! Graphviz DOT rendering of graphs, host multigraphs and reduction outputs.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::graph::Graph;
use crate::hgraph::MultiGraph;
use crate::reduction::{ReductionOutput, VertexClass};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_dot(g: &Graph, name: &str) -> String {
    render_graph(g, name, |_| None)
}

fn render_graph(g: &Graph, name: &str, style: impl Fn(&str) -> Option<&'static str>) -> String {
    let mut out = format!("graph {} {{\n", quote(name));
    for v in g.names() {
        match style(v) {
            Some(attrs) => writeln!(out, "  {} [{attrs}];", quote(v)),
            None => writeln!(out, "  {};", quote(v)),
        }
        .expect("write to string");
    }
    for (u, v) in g.edge_names() {
        writeln!(out, "  {} -- {};", quote(&u), quote(&v)).expect("write to string");
    }
    out.push_str("}\n");
    out
}

/// Host multigraph; nodes in `highlight` are filled. Parallel edges are
/// drawn separately and carry their labels.
pub fn multigraph_dot(h: &MultiGraph, name: &str, highlight: &BTreeSet<&str>) -> String {
    let mut out = format!("graph {} {{\n", quote(name));
    for v in h.nodes() {
        if highlight.contains(v.as_str()) {
            writeln!(out, "  {} [style=filled, fillcolor=gold];", quote(v))
        } else {
            writeln!(out, "  {};", quote(v))
        }
        .expect("write to string");
    }
    for (id, u, v, label) in h.edges() {
        let label = label.map_or_else(|| id.to_string(), str::to_owned);
        writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(u),
            quote(v),
            quote(&label)
        )
        .expect("write to string");
    }
    out.push_str("}\n");
    out
}

fn class_style(class: Option<VertexClass>) -> Option<&'static str> {
    Some(match class? {
        VertexClass::Z { .. } => "style=filled, fillcolor=lightblue",
        VertexClass::R { .. } => "style=filled, fillcolor=palegreen",
        VertexClass::Beta => "style=filled, fillcolor=salmon, shape=doublecircle",
        _ => "style=filled, fillcolor=lightgrey, shape=box",
    })
}

/// G′ with vertices coloured by class.
pub fn target_dot(out: &ReductionOutput) -> String {
    render_graph(&out.g_prime, "G'", |v| class_style(out.class_of(v)))
}

/// H′ with the extra subdivision nodes highlighted.
pub fn subdivision_dot(out: &ReductionOutput) -> String {
    let eps: BTreeSet<&str> = out.epsilon_paths.keys().map(String::as_str).collect();
    multigraph_dot(&out.h_sub, "H'", &eps)
}

/// The pattern K with its pendant nodes highlighted.
pub fn k_pattern_dot(out: &ReductionOutput) -> String {
    let pendants = crate::reduction::pendant_nodes(out.k);
    let pendants: BTreeSet<&str> = pendants.iter().map(String::as_str).collect();
    multigraph_dot(&out.k_pattern, "K", &pendants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::InstanceSpec;
    use crate::reduction::build_reduction;

    fn node_lines(dot: &str) -> usize {
        dot.lines()
            .filter(|l| l.ends_with(';') && !l.contains("--"))
            .count()
    }

    #[test]
    fn node_counts() {
        let inst = InstanceSpec::Random {
            k: 2,
            p: 2,
            q: 1.0,
            seed: 0,
        }
        .build()
        .unwrap();
        let out = build_reduction(&inst).unwrap();
        let h = subdivision_dot(&out);
        assert_eq!(node_lines(&h), 17);
        assert_eq!(h.matches("fillcolor=gold").count(), 2 * 2 + 2);
        assert_eq!(node_lines(&target_dot(&out)), out.g_prime.order());
        assert_eq!(target_dot(&out).matches(" -- ").count(), out.g_prime.size());

        let inst = InstanceSpec::Random {
            k: 3,
            p: 2,
            q: 1.0,
            seed: 0,
        }
        .build()
        .unwrap();
        let out = build_reduction(&inst).unwrap();
        let k = k_pattern_dot(&out);
        assert_eq!(node_lines(&k), 18);
        assert_eq!(k.matches(" -- ").count(), 24);
    }

    #[test]
    fn quoting() {
        let g = Graph::from_edges(["a\"b", "c"], [("a\"b", "c")]).unwrap();
        assert_eq!(
            graph_dot(&g, "g"),
            "graph \"g\" {\n  \"a\\\"b\";\n  \"c\";\n  \"a\\\"b\" -- \"c\";\n}\n"
        );
    }
}

//! Graphviz export.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::graph::FactorizationGraph;
use crate::mnr::{LabeledMnr, MultiNodedRootedTree};

/// Undirected graph for `neato`: points pinned on a circle in `τ` order
/// (clockwise from the top), S-vertices as circles `s1, s2, …` placed freely.
pub fn graph_to_dot(g: &FactorizationGraph) -> String {
    let d = g.d();
    let radius = (d as f64).max(3.0) * 0.4;
    let mut out = String::from("graph factorization {\n  layout=neato;\n  node [fontsize=10];\n");
    for (p, &v) in g.tau().elements().iter().enumerate() {
        let angle = PI / 2.0 - 2.0 * PI * p as f64 / d as f64;
        let _ = writeln!(
            out,
            "  p{v} [shape=point, xlabel=\"{v}\", pos=\"{:.3},{:.3}!\"];",
            radius * angle.cos(),
            radius * angle.sin()
        );
    }
    for j in 0..g.svertices().len() {
        let _ = writeln!(out, "  s{} [shape=circle, label=\"s{}\"];", j + 1, j + 1);
    }
    for j in 0..g.svertices().len() {
        for &v in g.neighbors(j) {
            let _ = writeln!(out, "  s{} -- p{v};", j + 1);
        }
    }
    out.push_str("}\n");
    out
}

fn mnr_dot(m: &MultiNodedRootedTree, labels: Option<&[Vec<usize>]>) -> String {
    let mut out = String::from("digraph mnr {\n  node [shape=record, fontsize=10];\n");
    for i in 0..=m.n() {
        let name = if i == 0 { "0".to_string() } else { format!("s{i}") };
        let ports = (1..=m.vertex_data()[i])
            .map(|p| match labels {
                Some(ls) => format!("<n{p}> {}", ls[i][p - 1]),
                None => format!("<n{p}> "),
            })
            .collect::<Vec<_>>()
            .join("|");
        let _ = writeln!(out, "  v{i} [xlabel=\"{name}\", label=\"{ports}\"];");
    }
    for i in 1..=m.n() {
        let (p, b) = m.attachment(i).unwrap();
        let _ = writeln!(out, "  v{p}:n{b} -> v{i};");
    }
    out.push_str("}\n");
    out
}

/// Each vertex is a record box with one port per node, left to right;
/// edges leave the port of the node the child hangs from.
pub fn mnr_to_dot(m: &MultiNodedRootedTree) -> String {
    mnr_dot(m, None)
}

/// As [`mnr_to_dot`], with node labels shown in the ports.
pub fn labeled_to_dot(lm: &LabeledMnr) -> String {
    mnr_dot(lm.mnr(), Some(lm.labels()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::Factorization;
    use crate::graph::graph_of_default;
    use crate::perm::Cycle;

    #[test]
    fn star_graph_dot() {
        let f = Factorization::new(Cycle::standard(3), vec![Cycle::standard(3)]).unwrap();
        let dot = graph_to_dot(&graph_of_default(&f).unwrap());
        assert_eq!(dot.matches("shape=point").count(), 3);
        assert_eq!(dot.matches("shape=circle").count(), 1);
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert!(dot.contains("p1 [shape=point, xlabel=\"1\", pos=\"0.000,1.200!\"]"));
    }

    #[test]
    fn mnr_dot_ports() {
        let m = MultiNodedRootedTree::from_edges(vec![4, 5], vec![1, 2, 1], &[(0, 4, 1), (4, 5, 2)]).unwrap();
        let dot = mnr_to_dot(&m);
        assert!(dot.contains("v1 [xlabel=\"s1\", label=\"<n1> |<n2> \"];"));
        assert!(dot.contains("v1:n2 -> v2;"));
        let lm = LabeledMnr::new(m, vec![vec![1], vec![2, 3], vec![4]]).unwrap();
        assert!(labeled_to_dot(&lm).contains("label=\"<n1> 2|<n2> 3\""));
    }
}

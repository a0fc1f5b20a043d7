//! Graphviz export of a completion's Hasse diagram.

use std::fmt::Write;

use crate::completion::CompletedPoset;
use crate::poset::Carrier;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders cover edges of the inclusion order, bottom to top. Principal cuts
/// `<x]` are drawn as filled boxes annotated with `x`.
pub fn completion_dot(c: &CompletedPoset) -> String {
    let p = c.parent();
    let mut principal_of: Vec<Option<usize>> = vec![None; c.len()];
    for (x, &k) in c.embedding().iter().enumerate() {
        principal_of[k] = Some(x);
    }
    let mut out = String::new();
    out.push_str("digraph completion {\n");
    out.push_str("    rankdir=BT;\n");
    out.push_str("    node [shape=ellipse, fontname=\"Helvetica\"];\n");
    for i in 0..c.len() {
        let members: Vec<&str> = c.cut_bits(i).iter().map(|x| p.label(x)).collect();
        let label = format!("{{{}}}", members.join(", "));
        match principal_of[i] {
            Some(x) => writeln!(
                out,
                "    c{i} [label=\"{}\", xlabel=\"<{}]\", shape=box, style=filled, fillcolor=lightgrey];",
                escape(&label),
                escape(p.label(x))
            ),
            None => writeln!(out, "    c{i} [label=\"{}\"];", escape(&label)),
        }
        .expect("writing to a String");
    }
    for (a, b) in c.order().cover_pairs() {
        writeln!(out, "    c{a} -> c{b};").expect("writing to a String");
    }
    out.push_str("}\n");
    out
}

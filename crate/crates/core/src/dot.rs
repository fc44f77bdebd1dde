//! Graphviz DOT export.

use std::fmt::Write;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::exact;
use crate::oriented::OrientedDiagram;
use crate::schema::{Document, Payload};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' | '\\' => {
                out.push('\\');
                out.push(ch);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(ch),
        }
    }
    out.push('"');
    out
}

/// Undirected graph: one node per curve labelled by `E^2` (black when
/// `E^2 = -2`) and one edge per positive pairing, labelled when the pairing
/// exceeds 1.
pub fn surface_dot(name: &str, c: &Configuration) -> String {
    let mut out = format!("graph {} {{\n", quote(name));
    out.push_str("  node [shape=circle, style=filled];\n");
    for (i, label) in c.labels().iter().enumerate() {
        let e2 = c.self_intersection(i);
        let (fill, font) = if e2 == -2 { ("black", "white") } else { ("white", "black") };
        let _ = writeln!(
            out,
            "  {} [label={}, fillcolor={fill}, fontcolor={font}];",
            quote(label),
            quote(&e2.to_string())
        );
    }
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let p = c.pairing(i, j);
            if p <= 0 {
                continue;
            }
            let _ = write!(out, "  {} -- {}", quote(&c.labels()[i]), quote(&c.labels()[j]));
            if p > 1 {
                let _ = write!(out, " [label={}]", quote(&p.to_string()));
            }
            out.push_str(";\n");
        }
    }
    out.push_str("}\n");
    out
}

/// Directed graph with one edge `i -> j` per arrow, labelled `t_ij`.
pub fn diagram_dot(name: &str, d: &OrientedDiagram) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    out.push_str("  node [shape=circle];\n");
    for (label, div) in d.labels().iter().zip(d.divisor_ids()) {
        let _ = writeln!(out, "  {} [tooltip={}];", quote(label), quote(div));
    }
    for i in 0..d.len() {
        for j in 0..d.len() {
            if d.arrow(i, j) {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label={}];",
                    quote(&d.labels()[i]),
                    quote(&d.labels()[j]),
                    quote(&exact::format_rational(d.t(i, j)))
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn export_dot(doc: &Document) -> Result<String> {
    match &doc.payload {
        Payload::Surface(c) => Ok(surface_dot(&doc.name, c)),
        Payload::Cy3(d) => Ok(diagram_dot(&doc.name, d)),
        Payload::Reference(_) => Err(Error::Invalid(format!("{}: reference tables have no graph", doc.name))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_catalog;
    use crate::exact::rat;
    use crate::lattice::GramMatrix;

    #[test]
    fn mutual_pair_has_two_edges() {
        let d = OrientedDiagram::from_weights(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]]).unwrap();
        let text = diagram_dot("pair", &d);
        assert_eq!(text.matches("->").count(), 2);
    }

    #[test]
    fn he8_has_nine_black_vertices() {
        let doc = load_catalog("HE8~").unwrap();
        let text = export_dot(&doc).unwrap();
        assert_eq!(text.matches("[label=").count(), 10);
        assert_eq!(text.matches("fillcolor=black").count(), 9);
        assert_eq!(text.matches(" -- ").count(), 9);
    }

    #[test]
    fn isolated_nodes() {
        let c = Configuration::unlabeled(GramMatrix::new(vec![vec![-1, 0], vec![0, -2]]).unwrap()).unwrap();
        let text = surface_dot("iso", &c);
        assert!(!text.contains("--"));
        assert_eq!(text.lines().filter(|l| l.contains("fillcolor")).count(), 2);
        assert!(export_dot(&load_catalog("k3-counts").unwrap()).is_err());
    }
}

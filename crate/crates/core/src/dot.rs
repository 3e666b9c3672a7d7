//! Deterministic Graphviz output. Node `n{i}` is element or point `i`; edges are
//! emitted in index order so identical input gives identical bytes.

use crate::frames::OrthoFrame;
use crate::lattice::OrthoLattice;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn header(name: &str, labels: &[String], out: &mut String) {
    out.push_str(&format!("digraph {} {{\n", quote(name)));
    for (i, l) in labels.iter().enumerate() {
        out.push_str(&format!("  n{i} [label={}];\n", quote(l)));
    }
}

/// Hasse diagram: one edge per cover pair, drawn bottom to top.
pub fn lattice_dot(l: &OrthoLattice) -> String {
    let mut out = String::new();
    header(l.name(), l.labels(), &mut out);
    out.insert_str(out.find('\n').unwrap() + 1, "  rankdir=BT;\n");
    for (a, b) in l.covers() {
        out.push_str(&format!("  n{a} -> n{b} [dir=none];\n"));
    }
    out.push_str("}\n");
    out
}

/// ⊥ as undirected edges (each unordered pair once), R as directed edges.
pub fn frame_dot(f: &OrthoFrame) -> String {
    let mut out = String::new();
    header(f.name(), f.labels(), &mut out);
    for (x, y) in f.perp().pairs().filter(|&(x, y)| x < y) {
        out.push_str(&format!("  n{x} -> n{y} [dir=none, style=dashed];\n"));
    }
    if let Some(r) = f.relation() {
        for (x, y) in r.pairs() {
            out.push_str(&format!("  n{x} -> n{y};\n"));
        }
    }
    out.push_str("}\n");
    out
}

/// Counts of (nodes, undirected edges, directed edges) in output of this module.
pub fn edge_counts(dot: &str) -> (usize, usize, usize) {
    let mut counts = (0, 0, 0);
    for line in dot.lines() {
        let line = line.trim();
        if line.contains("->") {
            if line.contains("dir=none") {
                counts.1 += 1;
            } else {
                counts.2 += 1;
            }
        } else if line.starts_with('n') && line.contains("[label=") {
            counts.0 += 1;
        }
    }
    counts
}

//! Graphviz rendering of Hasse diagrams.

use std::fmt::Write;

use crate::poset::Poset;
use crate::promotion::Labeling;

/// DOT text with edges pointing up along covers and one rank per height.
/// Node captions are `idx` or `idx:label` when a labeling is given.
pub fn export_dot(poset: &Poset, labeling: Option<&Labeling>) -> String {
    let n = poset.len();
    let mut out = String::new();
    out.push_str("digraph poset {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle];\n");
    for x in 0..n {
        let caption = match labeling {
            Some(l) => format!("{x}:{}", l.label(x)),
            None => x.to_string(),
        };
        writeln!(out, "  {x} [label=\"{caption}\"];").expect("writing to a String");
    }
    let top = (0..n).map(|x| poset.height(x)).max().unwrap_or(0);
    for h in 0..=top {
        let level: Vec<String> = (0..n).filter(|&x| poset.height(x) == h).map(|x| x.to_string()).collect();
        writeln!(out, "  {{ rank=same; {}; }}", level.join("; ")).expect("writing to a String");
    }
    for &(a, b) in poset.covers() {
        writeln!(out, "  {a} -> {b};").expect("writing to a String");
    }
    out.push_str("}\n");
    out
}

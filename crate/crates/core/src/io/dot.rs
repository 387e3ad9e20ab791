//! Graphviz export of the concept lattice.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::context::ExtentLattice;
use crate::dimensions::LadderCover;

/// Fill colours assigned to ladders in order, cycling.
pub const PALETTE: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
];

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Cover diagram, bottom to top, one rank per extent size. Nodes are
/// labelled with extent and intent; with a `highlight`, members of a
/// ladder are filled with that ladder's colour (first ladder wins).
pub fn export_dot(lat: &ExtentLattice, highlight: Option<&LadderCover>) -> String {
    let ctx = lat.context();
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, e) in lat.extents().iter().enumerate() {
        let label = format!(
            "{}\n{}",
            ctx.render_objects(e),
            ctx.render_attributes(&ctx.common_attributes(e))
        );
        let colour = highlight.and_then(|cover| {
            cover
                .ladders
                .iter()
                .position(|l| l.contains(e))
                .map(|k| PALETTE[k % PALETTE.len()])
        });
        write!(out, "  c{i} [label={}", quote(&label)).unwrap();
        if let Some(c) = colour {
            write!(out, ", style=filled, fillcolor=\"{c}\"").unwrap();
        }
        out.push_str("];\n");
    }
    let mut ranks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, e) in lat.extents().iter().enumerate() {
        ranks.entry(e.len()).or_default().push(i);
    }
    for nodes in ranks.values().filter(|n| n.len() > 1) {
        let ids: Vec<String> = nodes.iter().map(|i| format!("c{i}")).collect();
        writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
    }
    for (lower, upper) in lat.cover_edges() {
        writeln!(out, "  c{lower} -> c{upper};").unwrap();
    }
    out.push_str("}\n");
    out
}

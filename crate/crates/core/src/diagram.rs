//! Graphviz DOT output.
//!
//! Vertices become nodes and nondegenerate 1-cells become edges from `d_1`
//! to `d_0`. Every nondegenerate cell of level at least 2 gets a
//! `// face` comment line listing its faces `d_0, ..., d_n`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::sset::{standard_simplex, TruncatedSSet};

pub const MAX_DRAW_CELLS: usize = 200;
pub const MAX_DRAW_SIMPLEX: usize = 4;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn emit(x: &TruncatedSSet, graph: &str) -> Result<String> {
    let mut out = String::new();
    let edges = if x.truncation() >= 1 { x.nondegenerate_cells(1)? } else { Vec::new() };
    let mut faces = Vec::new();
    for n in 2..=x.truncation() {
        for c in x.nondegenerate_cells(n)? {
            let names: Vec<String> = (0..=n).map(|i| quote(x.cell_name(n - 1, x.face(n, i).apply(c)))).collect();
            faces.push(format!("  // face {n} {}: {}", quote(x.cell_name(n, c)), names.join(" ")));
        }
    }
    writeln!(out, "digraph {graph} {{").unwrap();
    writeln!(out, "  // {} vertices, {} edges, {} face annotations", x.level_size(0), edges.len(), faces.len()).unwrap();
    for v in x.cells(0) {
        writeln!(out, "  {};", quote(v)).unwrap();
    }
    for &e in &edges {
        let src = x.cell_name(0, x.face(1, 1).apply(e));
        let tgt = x.cell_name(0, x.face(1, 0).apply(e));
        writeln!(out, "  {} -> {} [label={}];", quote(src), quote(tgt), quote(x.cell_name(1, e))).unwrap();
    }
    for line in faces {
        writeln!(out, "{line}").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

/// DOT for a simplicial set with at most [`MAX_DRAW_CELLS`] cells.
pub fn sset_dot(x: &TruncatedSSet, graph: &str) -> Result<String> {
    if x.total_cells() > MAX_DRAW_CELLS {
        return Err(Error::Limit(format!("{} cells exceed the drawing limit of {MAX_DRAW_CELLS}", x.total_cells())));
    }
    emit(x, graph)
}

/// DOT for the edgewise subdivision of the `k`-simplex, complete through level `k`.
pub fn esd_simplex_dot(k: usize) -> Result<String> {
    if k > MAX_DRAW_SIMPLEX {
        return Err(Error::Limit(format!("simplex dimension {k} exceeds {MAX_DRAW_SIMPLEX}")));
    }
    let sd = standard_simplex(k, 2 * k + 1).esd()?;
    emit(&sd, &format!("esd_simplex_{k}"))
}

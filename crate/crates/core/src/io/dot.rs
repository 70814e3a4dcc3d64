use std::fmt::Write;

use crate::graph::Graph;

/// DOT text for visualisation; isolated vertices are listed explicitly.
pub fn write_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            let _ = writeln!(out, "  {v};");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_lists_edges_and_isolated_vertices() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(write_dot(&g, "G"), "graph G {\n  2;\n  0 -- 1;\n}\n");
    }
}

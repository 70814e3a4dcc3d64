//! Text formats: graph6, plain edge lists, DOT export and PACE-style tree decompositions.

mod dot;
mod edgelist;
mod graph6;
mod pace;

pub use dot::write_dot;
pub use edgelist::{parse_edge_list, write_edge_list};
pub use graph6::{parse_graph6, write_graph6};
pub use pace::{parse_pace_td, write_pace_td};

use crate::error::Result;
use crate::graph::Graph;

/// Reads a graph from either graph6 or edge-list text.
///
/// Text whose first non-blank line consists of whitespace-separated integers is
/// taken as an edge list, anything else as graph6.
pub fn parse_graph_auto(text: &str) -> Result<Graph> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let numeric = !first.is_empty()
        && first
            .split_whitespace()
            .all(|tok| tok.chars().all(|c| c.is_ascii_digit()));
    if numeric && first.split_whitespace().count() == 2 {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}

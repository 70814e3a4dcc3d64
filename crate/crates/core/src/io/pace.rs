//! PACE `.td` text: `s td <bags> <width+1> <n>`, then `b <i> <vertices…>`, then tree edges, all 1-indexed.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::width::TreeDecomposition;

pub fn write_pace_td(td: &TreeDecomposition, n: usize) -> String {
    let max_bag = td.bags.iter().map(VertexSet::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.bags.len(), max_bag, n);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag.iter() {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for (a, b) in td.tree.edges() {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

/// Parses PACE `.td` text, returning the decomposition and the declared vertex count.
pub fn parse_pace_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<VertexSet>> = Vec::new();
    let mut edges = Vec::new();
    let mut offset = 0;
    let err = |offset: usize, message: String| Error::Parse { offset, message };
    for line in text.split_inclusive('\n') {
        let at = offset;
        offset += line.len();
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() || tokens[0] == "c" {
            continue;
        }
        let num = |tok: &str| tok.parse::<usize>().map_err(|_| err(at, format!("{tok:?} is not a number")));
        match tokens[0] {
            "s" => {
                if tokens.len() != 5 || tokens[1] != "td" || header.is_some() {
                    return Err(err(at, "malformed solution line".into()));
                }
                let count = num(tokens[2])?;
                let n = num(tokens[4])?;
                header = Some((count, n));
                bags = vec![None; count];
            }
            "b" => {
                let (count, n) = header.ok_or_else(|| err(at, "bag before solution line".into()))?;
                let i = tokens.get(1).map(|t| num(t)).transpose()?.unwrap_or(0);
                if i == 0 || i > count {
                    return Err(err(at, format!("bag index {i} out of range")));
                }
                let mut bag = VertexSet::new(n);
                for tok in &tokens[2..] {
                    let v = num(tok)?;
                    if v == 0 || v > n {
                        return Err(err(at, format!("vertex {v} out of range")));
                    }
                    bag.insert(v - 1);
                }
                bags[i - 1] = Some(bag);
            }
            _ => {
                if tokens.len() != 2 {
                    return Err(err(at, "malformed tree edge".into()));
                }
                let (a, b) = (num(tokens[0])?, num(tokens[1])?);
                if a == 0 || b == 0 {
                    return Err(err(at, "bag ids are 1-indexed".into()));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (count, n) = header.ok_or_else(|| err(0, "missing solution line".into()))?;
    let bags: Vec<VertexSet> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| err(text.len(), format!("bag {} missing", i + 1))))
        .collect::<Result<_>>()?;
    let tree = Graph::new(count, edges)?;
    Ok((TreeDecomposition::new(tree, bags), n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let tree = Graph::new(2, [(0, 1)]).unwrap();
        let bags = vec![
            VertexSet::from_iter_with_capacity(3, [0, 1]),
            VertexSet::from_iter_with_capacity(3, [1, 2]),
        ];
        let td = TreeDecomposition::new(tree, bags);
        let text = write_pace_td(&td, 3);
        assert_eq!(text, "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
        let (back, n) = parse_pace_td(&text).unwrap();
        assert_eq!((back, n), (td, 3));
        assert!(parse_pace_td("s td 1 1 1\nb 1 2\n").is_err());
    }
}

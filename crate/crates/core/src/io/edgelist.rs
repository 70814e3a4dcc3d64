use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parses `"n m"` followed by `m` lines `"u v"` (0-indexed). Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut offset = 0;
    let mut tokens = Vec::new();
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let mut pos = 0;
        for tok in content.split_whitespace() {
            let start = content[pos..].find(tok).map_or(pos, |i| pos + i);
            tokens.push((offset + start, tok));
            pos = start + tok.len();
        }
        offset += line.len();
    }
    let mut numbers = tokens.into_iter().map(|(at, tok)| {
        tok.parse::<usize>().map_err(|_| Error::Parse {
            offset: at,
            message: format!("{tok:?} is not a vertex id"),
        })
    });
    let mut next = |what: &str| -> Result<usize> {
        numbers.next().unwrap_or_else(|| {
            Err(Error::Parse {
                offset: text.len(),
                message: format!("unexpected end of input, expected {what}"),
            })
        })
    };
    let n = next("vertex count")?;
    let m = next("edge count")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let u = next("edge endpoint")?;
        let v = next("edge endpoint")?;
        edges.push((u, v));
    }
    if let Some(extra) = numbers.next() {
        let at = match extra {
            Ok(_) => text.len(),
            Err(Error::Parse { offset, .. }) => offset,
            Err(_) => text.len(),
        };
        return Err(Error::Parse {
            offset: at,
            message: format!("more than the declared {m} edges"),
        });
    }
    let g = Graph::new(n, edges)?;
    if g.m() != m {
        return Err(Error::Parse {
            offset: 0,
            message: format!("declared {m} edges but {} are distinct", g.m()),
        });
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    g.canonical_text()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_errors() {
        let g = parse_edge_list("4 3 # a path\n0 1\n1 2\n\n2 3\n").unwrap();
        assert_eq!(write_edge_list(&g), "4 3\n0 1\n1 2\n2 3\n");
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        assert!(matches!(parse_edge_list("3 1\n0 x\n"), Err(Error::Parse { offset: 6, .. })));
        assert!(parse_edge_list("3 1\n0 3\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 1\n1 2\n").is_err());
    }
}

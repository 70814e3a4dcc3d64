use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const MAX_N: usize = 258_047;

fn parse_error(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Parses one graph6 line (an optional `>>graph6<<` prefix and trailing newline are accepted).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let mut offset = 0;
    let mut line = text.trim_end_matches(['\n', '\r']);
    if let Some(rest) = line.strip_prefix(HEADER) {
        offset = HEADER.len();
        line = rest;
    }
    let bytes = line.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_error(offset + i, format!("byte {b:#04x} outside the graph6 range")));
        }
    }
    let (n, header_len) = match bytes.first() {
        None => return Err(parse_error(offset, "empty input")),
        Some(&126) => {
            if bytes.get(1) == Some(&126) {
                return Err(parse_error(offset + 1, "eight-byte size headers are not supported"));
            }
            if bytes.len() < 4 {
                return Err(parse_error(offset + bytes.len(), "truncated size header"));
            }
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() != expected {
        return Err(parse_error(
            offset + header_len + body.len().min(expected),
            format!("expected {expected} data bytes for {n} vertices, found {}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = body[k / 6] - 63;
        if last & ((1 << (6 - k % 6)) - 1) != 0 {
            return Err(parse_error(offset + header_len + k / 6, "nonzero padding bits"));
        }
    }
    Graph::new(n, edges)
}

/// Encodes a graph in graph6 (no header prefix, no trailing newline).
pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_N {
        return Err(Error::size("vertex count for graph6", n, MAX_N));
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut current = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            current = (current << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(current + 63);
                current = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((current << (6 - k % 6)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

//! graph6: the bit-packed upper triangle of the adjacency matrix, six bits
//! per printable byte. The `>>graph6<<` header is accepted and optional.

use std::fmt;

use ufgraph_core::SimpleGraph;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    Empty,
    BadByte(u8),
    Truncated { expected: usize, found: usize },
    TrailingData,
}

impl fmt::Display for Graph6Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph6Error::Empty => write!(f, "empty graph6 string"),
            Graph6Error::BadByte(b) => write!(f, "byte {} is outside the graph6 range", b),
            Graph6Error::Truncated { expected, found } => {
                write!(f, "expected {} data bytes, found {}", expected, found)
            }
            Graph6Error::TrailingData => write!(f, "data after the adjacency bits"),
        }
    }
}

impl std::error::Error for Graph6Error {}

fn six(b: u8) -> Result<u64, Graph6Error> {
    if (63..=126).contains(&b) {
        Ok((b - 63) as u64)
    } else {
        Err(Graph6Error::BadByte(b))
    }
}

fn read_order(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let first = *bytes.first().ok_or(Graph6Error::Empty)?;
    if first != 126 {
        return Ok((six(first)? as usize, 1));
    }
    let (start, width) = if bytes.get(1) == Some(&126) { (2, 6) } else { (1, 3) };
    if bytes.len() < start + width {
        return Err(Graph6Error::Truncated { expected: start + width, found: bytes.len() });
    }
    let mut n = 0u64;
    for &b in &bytes[start..start + width] {
        n = n << 6 | six(b)?;
    }
    Ok((n as usize, start + width))
}

/// Parse one graph6 line. Vertex ids are `0..n`.
pub fn decode(line: &str) -> Result<SimpleGraph, Graph6Error> {
    let line = line.trim();
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let (n, used) = read_order(bytes)?;
    let data = &bytes[used..];
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: data.len() });
    }
    if data.len() > expected {
        return Err(Graph6Error::TrailingData);
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(data[k / 6])?;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    for &b in data {
        six(b)?;
    }
    Ok(SimpleGraph::from_edges(n, &edges).expect("graph6 edges are simple"))
}

/// graph6 string of `g` in vertex index order (ids and labels are dropped).
pub fn encode(g: &SimpleGraph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        let width = if n <= 258_047 {
            out.push(126);
            3
        } else {
            out.extend([126, 126]);
            6
        };
        for k in (0..width).rev() {
            out.push(((n >> (6 * k)) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ascii")
}

//! The graph6 text encoding for undirected graphs.
//!
//! A graph6 string is the vertex count `N(n)` followed by the upper triangle
//! of the adjacency matrix, column by column (`x(0,1) x(0,2) x(1,2) ...`),
//! packed six bits per byte with 63 added to each byte.

use trifree_core::graph::DEFAULT_CAP;
use trifree_core::Graph;

use crate::IoError;

/// Optional header some tools put in front of a graph6 file.
pub const HEADER: &str = ">>graph6<<";

fn push_order(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encode `g` without header or trailing newline.
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_order(&mut out, n);
    let (mut acc, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                (acc, filled) = (0, 0);
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn sixes(bytes: &[u8]) -> Result<Vec<u8>, IoError> {
    bytes
        .iter()
        .map(|&b| match b {
            63..=126 => Ok(b - 63),
            _ => Err(IoError::Graph6(format!("byte {b} outside 63..=126"))),
        })
        .collect()
}

fn read_order(s: &[u8]) -> Result<(usize, &[u8]), IoError> {
    let short = || IoError::Graph6("truncated order field".into());
    match s.first() {
        None => Err(short()),
        Some(&126) if s.get(1) == Some(&126) => {
            let d = sixes(s.get(2..8).ok_or_else(short)?)?;
            Ok((d.iter().fold(0usize, |a, &x| (a << 6) | x as usize), &s[8..]))
        }
        Some(&126) => {
            let d = sixes(s.get(1..4).ok_or_else(short)?)?;
            Ok((d.iter().fold(0usize, |a, &x| (a << 6) | x as usize), &s[4..]))
        }
        Some(_) => Ok((sixes(&s[..1])?[0] as usize, &s[1..])),
    }
}

/// Decode one graph6 line. A leading header and surrounding whitespace are
/// ignored; the bit payload must have exactly the right length and zero
/// padding.
pub fn decode(line: &str) -> Result<Graph, IoError> {
    let line = line.trim();
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    if line.starts_with(':') || line.starts_with('&') {
        return Err(IoError::Graph6("sparse6 and digraph6 are not supported".into()));
    }
    let (n, body) = read_order(line.as_bytes())?;
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if body.len() != need {
        return Err(IoError::Graph6(format!("expected {need} data bytes for n = {n}, found {}", body.len())));
    }
    let data = sixes(body)?;
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if data[idx / 6] >> (5 - idx % 6) & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    if pairs % 6 != 0 && data[need - 1] & ((1 << (6 - pairs % 6)) - 1) != 0 {
        return Err(IoError::Graph6("nonzero padding bits".into()));
    }
    Ok(Graph::from_edges_with_cap(n, &edges, n.max(DEFAULT_CAP))?)
}

/// Decode every nonempty line of a graph6 file.
pub fn decode_all(text: &str) -> Result<Vec<Graph>, IoError> {
    text.lines().filter(|l| !l.trim().is_empty()).map(decode).collect()
}

//! graph6 encoding and decoding.
//!
//! Order byte `n + 63` for `n <= 62`, otherwise `126` followed by three
//! 6-bit big-endian groups. The upper triangle follows column by column
//! (`x01, x02, x12, x03, ...`), six bits per byte, each byte offset by 63.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

pub const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte {byte} at position {pos} is outside the printable range 63..=126")]
    BadChar { pos: usize, byte: u8 },
    #[error("malformed order field")]
    BadLength,
    #[error("order {0} exceeds the supported maximum of 64")]
    TooLarge(usize),
    #[error("adjacency data truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} trailing bytes after the adjacency data")]
    Trailing(usize),
    #[error("padding bits in the final byte are not zero")]
    Padding,
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and surrounding
/// whitespace are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some((pos, &byte)) = bytes.iter().enumerate().find(|(_, b)| !(63..=126).contains(*b)) {
        return Err(Graph6Error::BadChar { pos, byte });
    }

    let (n, body) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        // 126 126 introduces the 8-byte form, only valid for n > 258047
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Graph6Error::BadLength);
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        if n < 63 {
            return Err(Graph6Error::BadLength);
        }
        (n, &bytes[4..])
    };
    if n > MAX_ORDER {
        return Err(Graph6Error::TooLarge(n));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: body.len() });
    }
    if body.len() > expected {
        return Err(Graph6Error::Trailing(body.len() - expected));
    }

    let mut adj = vec![0u64; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let b = body[k / 6] - 63;
            if (b >> (5 - k % 6)) & 1 == 1 {
                adj[i] |= 1u64 << j;
                adj[j] |= 1u64 << i;
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[expected - 1] - 63;
        if last & ((1u8 << (6 - nbits % 6)) - 1) != 0 {
            return Err(Graph6Error::Padding);
        }
    }
    Ok(Graph::from_adjacency(adj).expect("decoded adjacency is symmetric and loop-free"))
}

/// Encodes `g` under its current labeling (no canonical relabeling).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n) / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let adj = g.adjacency();
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for row in adj.iter().take(j) {
            acc = (acc << 1) | ((row >> j) & 1) as u8;
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Reads every graph of a graph6 stream, one per line. Blank lines are
/// skipped; a `>>graph6<<` header prefix is accepted.
pub fn read_graph6<R: BufRead>(reader: R) -> crate::Result<Vec<Graph>> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        let line = line.strip_prefix(HEADER).unwrap_or(line);
        if line.is_empty() {
            continue;
        }
        out.push(parse_graph6(line)?);
    }
    Ok(out)
}

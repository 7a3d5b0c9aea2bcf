//! graph6 encoding for simple graphs (the format written by nauty's `geng`).
//!
//! Layout: optional `>>graph6<<` header, `N(n)`, then the upper triangle of
//! the adjacency matrix in column order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`),
//! packed big-endian into 6-bit groups, each offset by 63.

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

pub const HEADER: &[u8] = b">>graph6<<";

const MAX_N: usize = (1 << 36) - 1;

fn perr(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Parses one graph6 record. Trailing `\n` / `\r\n` is accepted. Vertices
/// are numbered `0..n`.
pub fn parse_graph6(text: &[u8]) -> Result<MultiGraph> {
    let mut s = text;
    while let Some((&last, rest)) = s.split_last() {
        if last == b'\n' || last == b'\r' {
            s = rest;
        } else {
            break;
        }
    }
    let mut pos = 0;
    if s.starts_with(HEADER) {
        pos = HEADER.len();
    }
    let byte = |i: usize| -> Result<u64> {
        match s.get(i) {
            None => Err(perr(i, "unexpected end of input")),
            Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
            Some(&b) => Err(perr(i, format!("byte {b:#04x} outside 63..=126"))),
        }
    };

    let n = if s.get(pos) == Some(&126) {
        if s.get(pos + 1) == Some(&126) {
            let mut v = 0u64;
            for i in 0..6 {
                v = (v << 6) | byte(pos + 2 + i)?;
            }
            pos += 8;
            v as usize
        } else {
            let mut v = 0u64;
            for i in 0..3 {
                v = (v << 6) | byte(pos + 1 + i)?;
            }
            pos += 4;
            v as usize
        }
    } else {
        let v = byte(pos)? as usize;
        pos += 1;
        v
    };

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let body = &s[pos.min(s.len())..];
    if body.len() < need {
        return Err(perr(s.len(), format!("truncated: {n} vertices need {need} data bytes, found {}", body.len())));
    }
    if body.len() > need {
        return Err(perr(pos + need, "trailing bytes after adjacency data"));
    }

    let mut pairs = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let b = byte(pos + k / 6)?;
            if (b >> (5 - k % 6)) & 1 == 1 {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    if need > 0 {
        let pad = need * 6 - bits;
        let last = byte(pos + need - 1)?;
        if last & ((1 << pad) - 1) != 0 {
            return Err(perr(pos + need - 1, "nonzero padding bits"));
        }
    }
    Ok(MultiGraph::from_parts(0..n, &pairs))
}

/// Encodes `g` with vertices numbered by position. Multigraphs are refused.
pub fn emit_graph6(g: &MultiGraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::UnsupportedFormat(
            "graph6 encodes simple graphs only; use the edge-list format".into(),
        ));
    }
    let n = g.num_vertices();
    if n > MAX_N {
        return Err(Error::UnsupportedFormat(format!("{n} vertices is too many for graph6")));
    }
    let mut out: Vec<u8> = Vec::new();
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

    let mut adj = vec![false; n * n];
    for (u, v) in g.edges() {
        let (i, j) = (g.vertex_index(u).unwrap(), g.vertex_index(v).unwrap());
        adj[i * n + j] = true;
        adj[j * n + i] = true;
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(adj[i * n + j]);
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ascii"))
}

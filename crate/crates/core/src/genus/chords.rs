//! Chord interleaving on a cycle.
//!
//! Three chords of a cycle that pairwise cross, with six distinct endpoints,
//! turn the cycle into a subdivision of K3,3: the endpoints alternate
//! between the two colour classes around the cycle.

use crate::error::{Error, Result};
use crate::graph::VertexId;

pub type Chord = (VertexId, VertexId);

fn position(cycle: &[VertexId], v: VertexId) -> Result<usize> {
    cycle
        .iter()
        .position(|&x| x == v)
        .ok_or_else(|| Error::InvalidArgument(format!("vertex {v} is not on the cycle")))
}

/// Whether two chords (given as cycle positions) cross.
pub fn positions_interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |p: usize| lo < p && p < hi;
    let on_a = |p: usize| p == lo || p == hi;
    if on_a(b.0) || on_a(b.1) {
        return false;
    }
    inside(b.0) != inside(b.1)
}

/// True iff the three chords pairwise interleave around `cycle`.
pub fn chords_overlap(cycle: &[VertexId], chords: [Chord; 3]) -> Result<bool> {
    let mut pos = [(0, 0); 3];
    for (i, &(u, v)) in chords.iter().enumerate() {
        pos[i] = (position(cycle, u)?, position(cycle, v)?);
        if pos[i].0 == pos[i].1 {
            return Err(Error::InvalidArgument(format!("chord ({u}, {v}) is degenerate")));
        }
    }
    Ok(positions_interleave(pos[0], pos[1])
        && positions_interleave(pos[0], pos[2])
        && positions_interleave(pos[1], pos[2]))
}

/// Every triple of pairwise interleaving chords among `chords`.
pub fn overlapping_triples(cycle: &[VertexId], chords: &[Chord]) -> Result<Vec<[usize; 3]>> {
    let mut out = Vec::new();
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            for k in j + 1..chords.len() {
                if chords_overlap(cycle, [chords[i], chords[j], chords[k]])? {
                    out.push([i, j, k]);
                }
            }
        }
    }
    Ok(out)
}

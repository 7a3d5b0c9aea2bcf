//! Small named graphs used throughout the tests and the CLI.

use crate::graph::MultiGraph;

/// Cycle on `0..n`. `n = 1` gives a loop, `n = 2` a digon.
pub fn cycle(n: usize) -> MultiGraph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    MultiGraph::from_edge_list(&pairs)
}

pub fn path(n: usize) -> MultiGraph {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    MultiGraph::from_parts(0..n, &pairs)
}

pub fn complete(n: usize) -> MultiGraph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    MultiGraph::from_parts(0..n, &pairs)
}

pub fn k4() -> MultiGraph {
    complete(4)
}

pub fn k5() -> MultiGraph {
    complete(5)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    let mut pairs = Vec::new();
    for i in 0..a {
        for j in a..a + b {
            pairs.push((i, j));
        }
    }
    MultiGraph::from_parts(0..a + b, &pairs)
}

pub fn k33() -> MultiGraph {
    complete_bipartite(3, 3)
}

/// Wheel with hub `0` and rim `1..=n`.
pub fn wheel(n: usize) -> MultiGraph {
    let mut pairs: Vec<_> = (1..=n).map(|i| (0, i)).collect();
    pairs.extend((1..=n).map(|i| (i, i % n + 1)));
    MultiGraph::from_edge_list(&pairs)
}

pub fn petersen() -> MultiGraph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((i + 5, (i + 2) % 5 + 5));
    }
    MultiGraph::from_edge_list(&pairs)
}

//! Canonical labelling of small simple graphs.
//!
//! Colour refinement to an equitable partition, then individualization of
//! each vertex of the first smallest non-singleton cell, recursively. The
//! canonical form is the lexicographically least adjacency encoding over all
//! leaves of that search tree. Automorphisms found at leaves prune sibling
//! branches that lie in the same orbit.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

pub const MAX_VERTICES: usize = 64;

/// Adjacency rows under the canonical order, one bitmask per vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> MultiGraph {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.rows[i] >> j & 1 == 1 {
                    pairs.push((i, j));
                }
            }
        }
        MultiGraph::from_parts(0..self.n, &pairs)
    }
}

/// Dense bitset graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGraph {
    pub n: usize,
    pub adj: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        BitGraph { n, adj: vec![0; n] }
    }

    pub fn from_multigraph(g: &MultiGraph) -> Result<Self> {
        if !g.is_simple() {
            return Err(Error::UnsupportedFormat("canonical form needs a simple graph".into()));
        }
        if g.num_vertices() > MAX_VERTICES {
            return Err(Error::UnsupportedFormat(format!(
                "canonical form supports at most {MAX_VERTICES} vertices"
            )));
        }
        let mut b = BitGraph::new(g.num_vertices());
        for (u, v) in g.edges() {
            b.add_edge(g.vertex_index(u).unwrap(), g.vertex_index(v).unwrap());
        }
        Ok(b)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn to_multigraph(&self) -> MultiGraph {
        CanonicalForm {
            n: self.n,
            rows: self.adj.clone(),
        }
        .to_graph()
    }
}

/// Ordered partition of the vertices; `cells[i]` lists the vertices of colour `i`.
type Partition = Vec<Vec<usize>>;

fn refine(g: &BitGraph, mut cells: Partition) -> Partition {
    let n = g.n;
    let mut colour = vec![0usize; n];
    loop {
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                colour[v] = c;
            }
        }
        let k = cells.len();
        let mut next: Partition = Vec::with_capacity(k);
        let mut sig = vec![0u16; k];
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u16>, usize)> = cell
                .iter()
                .map(|&v| {
                    sig.iter_mut().for_each(|s| *s = 0);
                    let mut nb = g.adj[v];
                    while nb != 0 {
                        let w = nb.trailing_zeros() as usize;
                        nb &= nb - 1;
                        sig[colour[w]] += 1;
                    }
                    (sig.clone(), v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        if next.len() == k {
            return next;
        }
        cells = next;
    }
}

fn encode(g: &BitGraph, order: &[usize]) -> Vec<u64> {
    let mut pos = vec![0usize; g.n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| {
            let mut row = 0u64;
            let mut nb = g.adj[v];
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                row |= 1 << pos[w];
            }
            row
        })
        .collect()
}

struct Search<'a> {
    g: &'a BitGraph,
    best: Option<(Vec<u64>, Vec<usize>)>,
    /// Automorphisms as vertex permutations.
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf(&mut self, order: Vec<usize>) {
        let code = encode(self.g, &order);
        match &self.best {
            None => self.best = Some((code, order)),
            Some((best, best_order)) => match code.cmp(best) {
                Ordering::Less => self.best = Some((code, order)),
                Ordering::Equal => {
                    let mut perm = vec![0; self.g.n];
                    for (i, &v) in order.iter().enumerate() {
                        perm[v] = best_order[i];
                    }
                    self.autos.push(perm);
                }
                Ordering::Greater => {}
            },
        }
    }

    /// Orbit representative of every vertex under the automorphisms found so
    /// far that fix `fixed` pointwise.
    fn orbits(&self, fixed: &[usize]) -> Vec<usize> {
        let n = self.g.n;
        let mut root: Vec<usize> = (0..n).collect();
        fn find(root: &mut [usize], mut x: usize) -> usize {
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        for p in self.autos.iter().filter(|p| fixed.iter().all(|&v| p[v] == v)) {
            for v in 0..n {
                let (a, b) = (find(&mut root, v), find(&mut root, p[v]));
                if a != b {
                    root[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|v| find(&mut root, v)).collect()
    }

    fn descend(&mut self, cells: Partition, fixed: &mut Vec<usize>) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(ti) = target else {
            self.leaf(cells.into_iter().map(|c| c[0]).collect());
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[ti].clone() {
            if !tried.is_empty() {
                let orbit = self.orbits(fixed);
                if tried.iter().any(|&t| orbit[t] == orbit[v]) {
                    continue;
                }
            }
            tried.push(v);
            let mut split = cells.clone();
            let rest: Vec<usize> = split[ti].iter().copied().filter(|&w| w != v).collect();
            split[ti] = vec![v];
            split.insert(ti + 1, rest);
            fixed.push(v);
            let refined = refine(self.g, split);
            self.descend(refined, fixed);
            fixed.pop();
        }
    }
}

/// Canonical ordering of the vertices of `g` and the resulting form.
pub fn canonical_labelling(g: &BitGraph) -> (CanonicalForm, Vec<usize>) {
    let mut by_degree: Vec<(usize, usize)> = (0..g.n).map(|v| (g.degree(v), v)).collect();
    by_degree.sort();
    let mut cells: Partition = Vec::new();
    for (d, v) in by_degree {
        match cells.last_mut() {
            Some(c) if g.degree(c[0]) == d => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    if g.n == 0 {
        return (CanonicalForm { n: 0, rows: vec![] }, vec![]);
    }
    let cells = refine(g, cells);
    let mut search = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    search.descend(cells, &mut Vec::new());
    let (rows, order) = search.best.expect("search reaches a leaf");
    (CanonicalForm { n: g.n, rows }, order)
}

pub fn canonical_form(g: &MultiGraph) -> Result<CanonicalForm> {
    Ok(canonical_labelling(&BitGraph::from_multigraph(g)?).0)
}

pub fn are_isomorphic(a: &MultiGraph, b: &MultiGraph) -> Result<bool> {
    if a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn relabel(g: &MultiGraph, perm: &[usize]) -> MultiGraph {
        let pairs: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        MultiGraph::from_parts(0..g.num_vertices(), &pairs)
    }

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [named::petersen(), named::k33(), named::cycle(9), named::wheel(6), named::complete(5)] {
            let base = canonical_form(&g).unwrap();
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..g.num_vertices()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&relabel(&g, &perm)).unwrap(), base);
            }
        }
    }

    #[test]
    fn separates_non_isomorphic() {
        // two cubic graphs on 6 vertices: the prism and K3,3
        let prism = MultiGraph::from_edge_list(&[
            (0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5),
        ]);
        assert!(!are_isomorphic(&prism, &named::k33()).unwrap());
        assert!(are_isomorphic(&named::cycle(6), &relabel(&named::cycle(6), &[3, 1, 4, 0, 5, 2])).unwrap());
        assert!(!are_isomorphic(&named::cycle(6), &named::path(6)).unwrap());
    }

    #[test]
    fn form_round_trips() {
        let g = named::petersen();
        let f = canonical_form(&g).unwrap();
        let back = f.to_graph();
        assert_eq!(back.num_edges(), 15);
        assert_eq!(canonical_form(&back).unwrap(), f);
    }

    #[test]
    fn rejects_multigraph() {
        let g = MultiGraph::from_edge_list(&[(0, 1), (0, 1)]);
        assert!(canonical_form(&g).is_err());
    }
}

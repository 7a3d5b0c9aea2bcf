//! Maximum genus through Xuong deficiency.
//!
//! For a spanning tree `T`, the deficiency is the number of components of the
//! co-tree `G - T` (edge-induced, loops included) with an odd number of
//! edges; the maximum genus is `(betti - min_T deficiency) / 2`. Since the
//! co-tree has `betti` edges, every deficiency has the parity of `betti`, so
//! a tree reaching `betti mod 2` is optimal.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Dsu, EdgeId, MultiGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XuongCertificate {
    pub tree_edges: Vec<EdgeId>,
    pub deficiency: usize,
    pub max_genus: usize,
    pub betti: usize,
    /// The deficiency is known to be the minimum over all spanning trees.
    pub optimal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XuongOptions {
    pub seed: u64,
    pub restarts: usize,
    /// Largest spanning-tree count enumerated exhaustively.
    pub exhaustive_budget: u128,
}

impl Default for XuongOptions {
    fn default() -> Self {
        XuongOptions {
            seed: 0,
            restarts: 64,
            exhaustive_budget: 1_000_000,
        }
    }
}

/// Edge endpoints as vertex positions.
fn dense_edges(g: &MultiGraph) -> Vec<(usize, usize)> {
    g.edges()
        .map(|(u, v)| (g.vertex_index(u).unwrap(), g.vertex_index(v).unwrap()))
        .collect()
}

fn require_connected(g: &MultiGraph) -> Result<()> {
    match g.num_components() {
        0 => Err(Error::InvalidArgument("graph has no vertices".into())),
        1 => Ok(()),
        components => Err(Error::Disconnected { components }),
    }
}

fn deficiency_dense(n: usize, edges: &[(usize, usize)], in_tree: &[bool]) -> usize {
    let mut dsu = Dsu::new(n);
    for (e, &(u, v)) in edges.iter().enumerate() {
        if !in_tree[e] {
            dsu.union(u, v);
        }
    }
    let mut count = vec![0usize; n];
    for (e, &(u, _)) in edges.iter().enumerate() {
        if !in_tree[e] {
            count[dsu.find(u)] += 1;
        }
    }
    count.iter().filter(|&&c| c % 2 == 1).count()
}

/// Deficiency of a spanning tree given by edge ids.
pub fn deficiency_of_tree(g: &MultiGraph, tree_edges: &[EdgeId]) -> Result<usize> {
    require_connected(g)?;
    let n = g.num_vertices();
    let edges = dense_edges(g);
    if tree_edges.len() + 1 != n {
        return Err(Error::NotSpanningTree(format!(
            "{} edges for {n} vertices",
            tree_edges.len()
        )));
    }
    let mut in_tree = vec![false; edges.len()];
    let mut dsu = Dsu::new(n);
    for &e in tree_edges {
        let &(u, v) = edges.get(e).ok_or(Error::MissingEdge(e))?;
        if in_tree[e] {
            return Err(Error::NotSpanningTree(format!("edge {e} listed twice")));
        }
        if !dsu.union(u, v) {
            return Err(Error::NotSpanningTree(format!("edge {e} closes a cycle")));
        }
        in_tree[e] = true;
    }
    Ok(deficiency_dense(n, &edges, &in_tree))
}

/// Certificate for a caller-supplied tree. It is flagged optimal only when
/// the deficiency reaches `betti mod 2`.
pub fn verify_xuong_tree(g: &MultiGraph, tree_edges: &[EdgeId]) -> Result<XuongCertificate> {
    let deficiency = deficiency_of_tree(g, tree_edges)?;
    let betti = g.betti();
    let mut tree_edges = tree_edges.to_vec();
    tree_edges.sort_unstable();
    Ok(XuongCertificate {
        tree_edges,
        deficiency,
        max_genus: (betti - deficiency) / 2,
        betti,
        optimal: deficiency == betti % 2,
    })
}

pub fn max_genus(g: &MultiGraph) -> Result<XuongCertificate> {
    max_genus_with(g, &XuongOptions::default())
}

/// Local search for a minimum-deficiency tree, falling back to exhaustive
/// enumeration when the tree count is within budget. If neither settles the
/// minimum, the best certificate is returned with `optimal = false`.
pub fn max_genus_with(g: &MultiGraph, opts: &XuongOptions) -> Result<XuongCertificate> {
    require_connected(g)?;
    let n = g.num_vertices();
    let edges = dense_edges(g);
    let betti = g.betti();
    let target = betti % 2;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best: Option<(usize, Vec<bool>)> = None;
    let mut order: Vec<usize> = (0..edges.len()).collect();
    for attempt in 0..=opts.restarts {
        if attempt > 0 {
            order.shuffle(&mut rng);
        }
        let mut tree = kruskal(n, &edges, &order);
        let d = hill_climb(n, &edges, &mut tree, &mut rng);
        if best.as_ref().map_or(true, |(b, _)| d < *b) {
            best = Some((d, tree));
        }
        if d == target {
            break;
        }
    }
    let (mut deficiency, mut tree) = best.expect("at least one attempt");
    let mut optimal = deficiency == target;

    if !optimal && spanning_tree_count(n, &edges) <= opts.exhaustive_budget as f64 + 0.5 {
        let (d, t) = exhaustive_minimum(n, &edges, target);
        if d < deficiency {
            deficiency = d;
            tree = t;
        }
        optimal = true;
    }

    let tree_edges = (0..edges.len()).filter(|&e| tree[e]).collect();
    Ok(XuongCertificate {
        tree_edges,
        deficiency,
        max_genus: (betti - deficiency) / 2,
        betti,
        optimal,
    })
}

/// Whether `Γ(g) = ⌊β/2⌋`, i.e. the minimum deficiency is at most one.
pub fn is_upper_embeddable(g: &MultiGraph) -> Result<bool> {
    let cert = max_genus(g)?;
    if cert.deficiency <= 1 {
        Ok(true)
    } else if cert.optimal {
        Ok(false)
    } else {
        Err(Error::Inconclusive(format!(
            "best tree has deficiency {} but optimality was not established",
            cert.deficiency
        )))
    }
}

fn kruskal(n: usize, edges: &[(usize, usize)], order: &[usize]) -> Vec<bool> {
    let mut dsu = Dsu::new(n);
    let mut in_tree = vec![false; edges.len()];
    for &e in order {
        let (u, v) = edges[e];
        if dsu.union(u, v) {
            in_tree[e] = true;
        }
    }
    in_tree
}

/// Tree edges on the path between `a` and `b`.
fn tree_path(n: usize, edges: &[(usize, usize)], in_tree: &[bool], a: usize, b: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        if in_tree[e] {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }
    let mut via = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut stack = vec![a];
    seen[a] = true;
    while let Some(x) = stack.pop() {
        if x == b {
            break;
        }
        for &(y, e) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                via[y] = e;
                stack.push(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut x = b;
    while x != a {
        let e = via[x];
        path.push(e);
        let (u, v) = edges[e];
        x = if u == x { v } else { u };
    }
    path
}

/// First-improvement descent over single edge swaps. Returns the final
/// deficiency.
fn hill_climb(n: usize, edges: &[(usize, usize)], tree: &mut [bool], rng: &mut ChaCha8Rng) -> usize {
    let target_parity = (edges.len() + 1 - n) % 2;
    let mut current = deficiency_dense(n, edges, tree);
    'outer: while current > target_parity {
        let mut co_tree: Vec<usize> = (0..edges.len())
            .filter(|&e| !tree[e] && edges[e].0 != edges[e].1)
            .collect();
        co_tree.shuffle(rng);
        for &e in &co_tree {
            let (u, v) = edges[e];
            for f in tree_path(n, edges, tree, u, v) {
                tree[f] = false;
                tree[e] = true;
                let d = deficiency_dense(n, edges, tree);
                if d < current {
                    current = d;
                    continue 'outer;
                }
                tree[e] = false;
                tree[f] = true;
            }
        }
        break;
    }
    current
}

/// Kirchhoff's matrix-tree count (floating point; loops ignored).
fn spanning_tree_count(n: usize, edges: &[(usize, usize)]) -> f64 {
    if n <= 1 {
        return 1.0;
    }
    let m = n - 1;
    let mut lap = vec![vec![0.0f64; m]; m];
    for &(u, v) in edges {
        if u == v {
            continue;
        }
        for (a, b) in [(u, v), (v, u)] {
            if a < m {
                lap[a][a] += 1.0;
                if b < m {
                    lap[a][b] -= 1.0;
                }
            }
        }
    }
    let mut det = 1.0;
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&a, &b| lap[a][col].abs().total_cmp(&lap[b][col].abs()))
            .unwrap();
        if lap[pivot][col].abs() < 1e-12 {
            return 0.0;
        }
        if pivot != col {
            lap.swap(pivot, col);
            det = -det;
        }
        det *= lap[col][col];
        for row in col + 1..m {
            let factor = lap[row][col] / lap[col][col];
            if factor != 0.0 {
                for k in col..m {
                    lap[row][k] -= factor * lap[col][k];
                }
            }
        }
    }
    det.abs()
}

/// Minimum deficiency over every spanning tree, stopping early at `target`.
fn exhaustive_minimum(n: usize, edges: &[(usize, usize)], target: usize) -> (usize, Vec<bool>) {
    struct Search<'a> {
        n: usize,
        edges: &'a [(usize, usize)],
        target: usize,
        best: (usize, Vec<bool>),
        chosen: Vec<bool>,
    }
    impl Search<'_> {
        fn connectable(&self, from: usize) -> bool {
            let mut dsu = Dsu::new(self.n);
            let mut parts = self.n;
            for (e, &(u, v)) in self.edges.iter().enumerate() {
                if (self.chosen[e] || e >= from) && dsu.union(u, v) {
                    parts -= 1;
                }
            }
            parts == 1
        }

        fn go(&mut self, e: usize, dsu: &Dsu, size: usize) -> bool {
            if size + 1 == self.n {
                let d = deficiency_dense(self.n, self.edges, &self.chosen);
                if d < self.best.0 {
                    self.best = (d, self.chosen.clone());
                }
                return d == self.target;
            }
            if e == self.edges.len() {
                return false;
            }
            let (u, v) = self.edges[e];
            let mut with = dsu.clone();
            if with.union(u, v) {
                self.chosen[e] = true;
                if self.go(e + 1, &with, size + 1) {
                    return true;
                }
                self.chosen[e] = false;
            }
            if self.connectable(e + 1) {
                return self.go(e + 1, dsu, size);
            }
            false
        }
    }

    let mut s = Search {
        n,
        edges,
        target,
        best: (usize::MAX, vec![false; edges.len()]),
        chosen: vec![false; edges.len()],
    };
    s.go(0, &Dsu::new(n), 0);
    s.best
}

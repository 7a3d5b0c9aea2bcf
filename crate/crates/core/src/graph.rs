//! Dart-based undirected multigraphs.
//!
//! Edge `e` owns the two darts `2e` and `2e + 1`; the partner of a dart is
//! therefore `d ^ 1`. A loop has both darts at the same vertex. Vertex ids are
//! arbitrary non-negative integers kept in ascending order, and they never get
//! renumbered by edge edits.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type DartId = usize;

#[inline]
pub fn partner(d: DartId) -> DartId {
    d ^ 1
}

#[inline]
pub fn edge_of(d: DartId) -> EdgeId {
    d >> 1
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    vertices: Vec<VertexId>,
    owners: Vec<VertexId>,
    labels: BTreeMap<VertexId, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInvariants {
    pub num_vertices: usize,
    pub num_edges: usize,
    pub num_components: usize,
    pub betti: usize,
    pub is_cubic: bool,
    pub is_triangle_free: bool,
    pub is_biconnected: bool,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn with_vertices(n: usize) -> Self {
        MultiGraph {
            vertices: (0..n).collect(),
            ..Self::default()
        }
    }

    pub fn from_edge_list(pairs: &[(VertexId, VertexId)]) -> Self {
        Self::from_parts(std::iter::empty(), pairs)
    }

    /// Like [`MultiGraph::from_edge_list`] but also declares vertices that may
    /// have no incident edge.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = VertexId>,
        pairs: &[(VertexId, VertexId)],
    ) -> Self {
        let mut ids: BTreeSet<VertexId> = vertices.into_iter().collect();
        for &(u, v) in pairs {
            ids.insert(u);
            ids.insert(v);
        }
        let mut g = MultiGraph {
            vertices: ids.into_iter().collect(),
            owners: Vec::with_capacity(2 * pairs.len()),
            labels: BTreeMap::new(),
        };
        for &(u, v) in pairs {
            g.owners.push(u);
            g.owners.push(v);
        }
        g
    }

    /// Inserts `v`; returns false if it was already present.
    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        match self.vertices.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.vertices.insert(pos, v);
                true
            }
        }
    }

    /// Inserts a vertex with id one above the current maximum.
    pub fn add_fresh_vertex(&mut self) -> VertexId {
        let v = self.next_vertex_id();
        self.vertices.push(v);
        v
    }

    pub fn next_vertex_id(&self) -> VertexId {
        self.vertices.last().map_or(0, |&m| m + 1)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        for x in [u, v] {
            if !self.contains_vertex(x) {
                return Err(Error::MissingVertex(x));
            }
        }
        self.owners.push(u);
        self.owners.push(v);
        Ok(self.num_edges() - 1)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.owners.len() / 2
    }

    pub fn num_darts(&self) -> usize {
        self.owners.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Position of `v` in [`MultiGraph::vertices`].
    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn owner(&self, d: DartId) -> VertexId {
        self.owners[d]
    }

    pub fn edge(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        (e < self.num_edges()).then(|| (self.owners[2 * e], self.owners[2 * e + 1]))
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.owners.chunks_exact(2).map(|c| (c[0], c[1]))
    }

    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        self.edges().collect()
    }

    /// Darts owned by each vertex, indexed by vertex position, in dart order.
    pub fn incidence(&self) -> Vec<Vec<DartId>> {
        let mut inc = vec![Vec::new(); self.num_vertices()];
        for (d, &v) in self.owners.iter().enumerate() {
            inc[self.vertex_index(v).expect("dart owner is a vertex")].push(d);
        }
        inc
    }

    pub fn darts_at(&self, v: VertexId) -> Vec<DartId> {
        (0..self.num_darts()).filter(|&d| self.owners[d] == v).collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.owners.iter().filter(|&&o| o == v).count()
    }

    /// Degrees indexed by vertex position.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices()];
        for &v in &self.owners {
            deg[self.vertex_index(v).expect("dart owner is a vertex")] += 1;
        }
        deg
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn set_label(&mut self, v: VertexId, name: impl Into<String>) -> Result<()> {
        if !self.contains_vertex(v) {
            return Err(Error::MissingVertex(v));
        }
        self.labels.insert(v, name.into());
        Ok(())
    }

    pub fn labels(&self) -> &BTreeMap<VertexId, String> {
        &self.labels
    }

    pub fn vertex_by_label(&self, name: &str) -> Option<VertexId> {
        self.labels
            .iter()
            .find_map(|(&v, l)| (l == name).then_some(v))
    }

    pub fn has_loops(&self) -> bool {
        self.edges().any(|(u, v)| u == v)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges()
            .all(|(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
    }

    /// Checks the dart and vertex bookkeeping.
    pub fn validate(&self) -> Result<()> {
        if self.owners.len() % 2 != 0 {
            return Err(Error::InvalidArgument("odd number of darts".into()));
        }
        if self.vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("vertex list not strictly increasing".into()));
        }
        if let Some(&v) = self.owners.iter().find(|&&v| !self.contains_vertex(v)) {
            return Err(Error::MissingVertex(v));
        }
        if let Some(&v) = self.labels.keys().find(|&&v| !self.contains_vertex(v)) {
            return Err(Error::MissingVertex(v));
        }
        let degree_sum: usize = self.degrees().iter().sum();
        if degree_sum != 2 * self.num_edges() {
            return Err(Error::InvalidArgument("degree sum mismatch".into()));
        }
        Ok(())
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.num_vertices();
        let mut dsu = Dsu::new(n);
        for (u, v) in self.edges() {
            dsu.union(self.vertex_index(u).unwrap(), self.vertex_index(v).unwrap());
        }
        let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for i in 0..n {
            groups.entry(dsu.find(i)).or_default().push(self.vertices[i]);
        }
        let mut comps: Vec<_> = groups.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    pub fn num_components(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() <= 1
    }

    /// Cycle-space dimension `|E| - |V| + c`.
    pub fn betti(&self) -> usize {
        self.num_edges() + self.num_components() - self.num_vertices()
    }

    /// The subgraph induced on `keep`, with edge order preserved.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> MultiGraph {
        let set: BTreeSet<_> = keep.iter().copied().collect();
        let pairs: Vec<_> = self
            .edges()
            .filter(|(u, v)| set.contains(u) && set.contains(v))
            .collect();
        let mut g = MultiGraph::from_parts(set.iter().copied(), &pairs);
        for (&v, l) in &self.labels {
            if set.contains(&v) {
                g.labels.insert(v, l.clone());
            }
        }
        g
    }

    pub fn remove_edge(&self, e: EdgeId) -> Result<MultiGraph> {
        if e >= self.num_edges() {
            return Err(Error::MissingEdge(e));
        }
        let mut g = self.clone();
        g.owners.drain(2 * e..2 * e + 2);
        Ok(g)
    }

    /// Replaces edge `e` by a path through `k` fresh 2-valent vertices. The
    /// first segment keeps id `e`; the others are appended.
    pub fn subdivide(&self, e: EdgeId, k: usize) -> Result<MultiGraph> {
        let (u, v) = self.edge(e).ok_or(Error::MissingEdge(e))?;
        if k == 0 {
            return Err(Error::InvalidArgument("subdivision count must be at least 1".into()));
        }
        let mut g = self.clone();
        let fresh: Vec<VertexId> = (0..k).map(|_| g.add_fresh_vertex()).collect();
        g.owners[2 * e + 1] = fresh[0];
        for w in fresh.windows(2) {
            g.add_edge(w[0], w[1])?;
        }
        g.add_edge(fresh[k - 1], v)?;
        debug_assert_eq!(g.owners[2 * e], u);
        Ok(g)
    }

    pub fn smooth(&self) -> MultiGraph {
        self.smooth_tracked().0
    }

    /// Smooths every 2-valent vertex. A component that is a cycle collapses to
    /// its smallest vertex carrying one loop.
    ///
    /// The second value maps each dart of the smoothed graph to the dart of
    /// `self` with the same owner that starts the corresponding path.
    pub fn smooth_tracked(&self) -> (MultiGraph, Vec<DartId>) {
        let inc = self.incidence();
        let deg: Vec<usize> = inc.iter().map(Vec::len).collect();
        let idx = |v: VertexId| self.vertex_index(v).unwrap();
        let is_branch = |v: VertexId| deg[idx(v)] != 2;
        let other_dart = |v: VertexId, d: DartId| {
            let ds = &inc[idx(v)];
            if ds[0] == d {
                ds[1]
            } else {
                ds[0]
            }
        };

        let mut used = vec![false; self.num_darts()];
        let mut pairs = Vec::new();
        let mut map = Vec::new();
        let mut kept: Vec<VertexId> = self.vertices.iter().copied().filter(|&v| is_branch(v)).collect();

        for d in 0..self.num_darts() {
            if used[d] || !is_branch(self.owners[d]) {
                continue;
            }
            used[d] = true;
            let mut cur = d;
            let end = loop {
                let p = partner(cur);
                let w = self.owners[p];
                used[p] = true;
                if is_branch(w) {
                    break p;
                }
                cur = other_dart(w, p);
                used[cur] = true;
            };
            pairs.push((self.owners[d], self.owners[end]));
            map.push(d);
            map.push(end);
        }

        for &v in &self.vertices {
            if is_branch(v) {
                continue;
            }
            let ds = &inc[idx(v)];
            if used[ds[0]] {
                continue;
            }
            let (a, b) = (ds[0], ds[1]);
            used[a] = true;
            let mut cur = a;
            loop {
                let p = partner(cur);
                used[p] = true;
                let w = self.owners[p];
                if w == v {
                    debug_assert_eq!(p, b);
                    break;
                }
                cur = other_dart(w, p);
                used[cur] = true;
            }
            kept.push(v);
            pairs.push((v, v));
            map.push(a);
            map.push(b);
        }

        let mut g = MultiGraph::from_parts(kept.iter().copied(), &[]);
        g.owners = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        for (&v, l) in &self.labels {
            if g.contains_vertex(v) {
                g.labels.insert(v, l.clone());
            }
        }
        (g, map)
    }

    /// Disjoint union; `other`'s vertex `v` becomes `v + offset`.
    pub fn disjoint_union(&self, other: &MultiGraph) -> (MultiGraph, usize) {
        let offset = self.next_vertex_id();
        let mut g = self.clone();
        g.vertices.extend(other.vertices.iter().map(|v| v + offset));
        g.owners.extend(other.owners.iter().map(|v| v + offset));
        for (&v, l) in &other.labels {
            g.labels.insert(v + offset, l.clone());
        }
        (g, offset)
    }

    pub fn girth(&self) -> Option<usize> {
        if self.has_loops() {
            return Some(1);
        }
        if !self.is_simple() {
            return Some(2);
        }
        let adj = self.adjacency();
        let n = self.num_vertices();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            let mut queue = VecDeque::from([s]);
            dist[s] = 0;
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Edge sets of the blocks (maximal 2-connected pieces, bridges, and
    /// loops), each sorted, ordered by smallest edge id.
    pub fn blocks(&self) -> Vec<Vec<EdgeId>> {
        let n = self.num_vertices();
        let mut adj = vec![Vec::new(); n];
        let mut out = Vec::new();
        for (e, (u, v)) in self.edges().enumerate() {
            if u == v {
                out.push(vec![e]);
                continue;
            }
            let (iu, iv) = (self.vertex_index(u).unwrap(), self.vertex_index(v).unwrap());
            adj[iu].push((iv, e));
            adj[iv].push((iu, e));
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut timer = 0;
        let mut edge_stack: Vec<EdgeId> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut stack: Vec<(usize, EdgeId, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&mut (v, parent_edge, ref mut next)) = stack.last_mut() {
                if *next < adj[v].len() {
                    let (w, e) = adj[v][*next];
                    *next += 1;
                    if e == parent_edge {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        edge_stack.push(e);
                        stack.push((w, e, 0));
                    } else if disc[w] < disc[v] {
                        low[v] = low[v].min(disc[w]);
                        edge_stack.push(e);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            let mut block = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                block.push(e);
                                if e == parent_edge {
                                    break;
                                }
                            }
                            out.push(block);
                        }
                    }
                }
            }
        }
        for b in &mut out {
            b.sort_unstable();
        }
        out.sort_by_key(|b| b[0]);
        out
    }

    /// Subgraph formed by the given edges (in that order) and their endpoints.
    /// Edge `i` of the result is `edges[i]` of `self`, with the same orientation.
    pub fn edge_subgraph(&self, edges: &[EdgeId]) -> Result<MultiGraph> {
        let mut pairs = Vec::with_capacity(edges.len());
        for &e in edges {
            pairs.push(self.edge(e).ok_or(Error::MissingEdge(e))?);
        }
        Ok(MultiGraph::from_edge_list(&pairs))
    }

    /// Neighbour lists by vertex position; parallel edges repeat, loops appear twice.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for (u, v) in self.edges() {
            let (iu, iv) = (self.vertex_index(u).unwrap(), self.vertex_index(v).unwrap());
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        adj
    }

    pub fn is_triangle_free(&self) -> bool {
        let n = self.num_vertices();
        let mut nbrs = vec![BTreeSet::new(); n];
        for (u, v) in self.edges() {
            if u != v {
                let (iu, iv) = (self.vertex_index(u).unwrap(), self.vertex_index(v).unwrap());
                nbrs[iu].insert(iv);
                nbrs[iv].insert(iu);
            }
        }
        for (u, v) in self.edges() {
            if u == v {
                continue;
            }
            let (iu, iv) = (self.vertex_index(u).unwrap(), self.vertex_index(v).unwrap());
            if nbrs[iu].intersection(&nbrs[iv]).next().is_some() {
                return false;
            }
        }
        true
    }

    /// Connected, at least three vertices, and no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        let n = self.num_vertices();
        if n < 3 || !self.is_connected() {
            return false;
        }
        let adj: Vec<Vec<usize>> = self
            .adjacency()
            .into_iter()
            .enumerate()
            .map(|(i, a)| a.into_iter().filter(|&j| j != i).collect())
            .collect();
        !has_articulation_point(&adj)
    }

    pub fn invariants(&self) -> GraphInvariants {
        let num_components = self.num_components();
        GraphInvariants {
            num_vertices: self.num_vertices(),
            num_edges: self.num_edges(),
            num_components,
            betti: self.num_edges() + num_components - self.num_vertices(),
            is_cubic: self.degrees().iter().all(|&d| d == 3),
            is_triangle_free: self.is_triangle_free(),
            is_biconnected: self.is_biconnected(),
        }
    }

    /// Edge-list text: `u v` per edge, `vertex v` for isolated vertices,
    /// `label v NAME` for labels.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = String::new();
        let deg = self.degrees();
        for (i, &v) in self.vertices.iter().enumerate() {
            if deg[i] == 0 && !self.labels.contains_key(&v) {
                writeln!(out, "vertex {v}").unwrap();
            }
        }
        for (v, name) in &self.labels {
            writeln!(out, "label {v} {name}").unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn parse_edge_list_text(text: &str) -> Result<MultiGraph> {
        let mut vertices = Vec::new();
        let mut pairs = Vec::new();
        let mut labels = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: &str| Error::Parse {
                line: line_no,
                reason: reason.to_string(),
            };
            let num = |s: &str| s.parse::<VertexId>().map_err(|_| err(&format!("bad vertex id {s:?}")));
            let mut toks = line.split_whitespace();
            let first = toks.next().unwrap();
            match first {
                "label" => {
                    let v = num(toks.next().ok_or_else(|| err("label needs a vertex"))?)?;
                    let name: Vec<&str> = toks.collect();
                    if name.is_empty() {
                        return Err(err("label needs a name"));
                    }
                    vertices.push(v);
                    labels.push((v, name.join(" ")));
                }
                "vertex" => {
                    vertices.push(num(toks.next().ok_or_else(|| err("vertex needs an id"))?)?);
                    if toks.next().is_some() {
                        return Err(err("trailing tokens"));
                    }
                }
                _ => {
                    let u = num(first)?;
                    let v = num(toks.next().ok_or_else(|| err("edge needs two endpoints"))?)?;
                    if toks.next().is_some() {
                        return Err(err("trailing tokens"));
                    }
                    pairs.push((u, v));
                }
            }
        }
        let mut g = MultiGraph::from_parts(vertices, &pairs);
        for (v, name) in labels {
            g.set_label(v, name)?;
        }
        Ok(g)
    }
}

/// Disjoint union of `g1` and `g2` plus an edge from `v1` to (the shifted) `v2`.
pub fn bar_amalgamation(
    g1: &MultiGraph,
    v1: VertexId,
    g2: &MultiGraph,
    v2: VertexId,
) -> Result<MultiGraph> {
    if !g1.contains_vertex(v1) {
        return Err(Error::MissingVertex(v1));
    }
    if !g2.contains_vertex(v2) {
        return Err(Error::MissingVertex(v2));
    }
    let (mut g, offset) = g1.disjoint_union(g2);
    g.add_edge(v1, v2 + offset)?;
    Ok(g)
}

fn has_articulation_point(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    // iterative DFS frames: (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
    let mut root_children = 0;
    disc[0] = 0;
    low[0] = 0;
    timer += 1;
    while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
        if *next < adj[v].len() {
            let w = adj[v][*next];
            *next += 1;
            if disc[w] == usize::MAX {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else if w != parent {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if parent != 0 && low[v] >= disc[parent] {
                    return true;
                }
            }
        }
    }
    root_children > 1
}

/// Union-find over `0..n`.
#[derive(Clone, Debug)]
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn empty_graph() {
        let g = MultiGraph::from_edge_list(&[]);
        assert_eq!((g.num_vertices(), g.num_edges(), g.betti()), (0, 0, 0));
    }

    #[test]
    fn parallel_pair() {
        let g = MultiGraph::from_edge_list(&[(0, 1), (0, 1)]);
        assert_eq!((g.num_vertices(), g.num_edges(), g.betti()), (2, 2, 1));
        g.validate().unwrap();
    }

    #[test]
    fn betti_of_named_graphs() {
        assert_eq!(MultiGraph::with_vertices(1).betti(), 0);
        assert_eq!(named::k33().betti(), 4);
        assert_eq!(named::k5().betti(), 6);
        let k33 = named::k33();
        assert_eq!((k33.num_vertices(), k33.num_edges()), (6, 9));
    }

    #[test]
    fn loop_partners_share_owner() {
        let g = MultiGraph::from_edge_list(&[(3, 3)]);
        assert_eq!(g.owner(0), g.owner(partner(0)));
        assert_eq!(g.degree(3), 2);
        assert_eq!(g.betti(), 1);
    }

    #[test]
    fn subdivide_loop_gives_digon() {
        let g = MultiGraph::from_edge_list(&[(0, 0)]).subdivide(0, 1).unwrap();
        assert_eq!(g.edge_list(), vec![(0, 1), (1, 0)]);
        assert_eq!(g.betti(), 1);
    }

    #[test]
    fn subdivide_keeps_betti_and_ids() {
        let k33 = named::k33();
        let g = k33.subdivide(4, 3).unwrap();
        assert_eq!(g.betti(), 4);
        assert_eq!(g.num_vertices(), 9);
        assert_eq!(&g.vertices()[..6], k33.vertices());
        g.validate().unwrap();
        assert_eq!(k33.subdivide(99, 1), Err(Error::MissingEdge(99)));
        assert!(k33.subdivide(0, 0).is_err());
    }

    #[test]
    fn smooth_path_and_cycle() {
        let path = MultiGraph::from_edge_list(&[(0, 1), (1, 2)]);
        assert_eq!(path.smooth().edge_list(), vec![(0, 2)]);

        let c5 = named::cycle(5);
        let s = c5.smooth();
        assert_eq!(s.vertices(), &[0]);
        assert_eq!(s.edge_list(), vec![(0, 0)]);
        assert_eq!(s.betti(), 1);
    }

    #[test]
    fn smooth_keeps_branch_vertices() {
        // theta graph with subdivided arms
        let g = MultiGraph::from_edge_list(&[(0, 2), (2, 1), (0, 3), (3, 4), (4, 1), (0, 1)]);
        let (s, map) = g.smooth_tracked();
        assert_eq!(s.vertices(), &[0, 1]);
        assert_eq!(s.num_edges(), 3);
        assert_eq!(s.betti(), g.betti());
        for (d, &orig) in map.iter().enumerate() {
            assert_eq!(s.owner(d), g.owner(orig));
        }
    }

    #[test]
    fn bar_amalgamation_is_additive() {
        let a = MultiGraph::with_vertices(1);
        let g = bar_amalgamation(&a, 0, &a, 0).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges(), g.betti()), (2, 1, 0));

        let k33 = named::k33();
        let g = bar_amalgamation(&k33, 0, &k33, 5).unwrap();
        assert_eq!(g.betti(), 8);
        assert!(g.is_connected());
        assert_eq!(bar_amalgamation(&k33, 7, &k33, 0), Err(Error::MissingVertex(7)));
    }

    #[test]
    fn structural_flags() {
        let inv = named::k33().invariants();
        assert!(inv.is_cubic && inv.is_triangle_free && inv.is_biconnected);
        let inv = named::k4().invariants();
        assert!(inv.is_cubic && !inv.is_triangle_free && inv.is_biconnected);
        let path = MultiGraph::from_edge_list(&[(0, 1), (1, 2)]);
        assert!(!path.is_biconnected());
        let bowtie = MultiGraph::from_edge_list(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert!(!bowtie.is_biconnected());
        assert!(named::cycle(4).is_biconnected());
    }

    #[test]
    fn block_decomposition() {
        let k4 = named::k4();
        assert_eq!(k4.blocks(), vec![vec![0, 1, 2, 3, 4, 5]]);
        let bowtie = MultiGraph::from_edge_list(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(bowtie.blocks(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let g = MultiGraph::from_edge_list(&[(0, 1), (1, 2), (2, 2), (1, 2), (2, 3)]);
        assert_eq!(g.blocks(), vec![vec![0], vec![1, 3], vec![2], vec![4]]);
        let k33 = named::k33();
        let amal = bar_amalgamation(&k33, 0, &k33, 0).unwrap();
        assert_eq!(amal.blocks().len(), 3);
    }

    #[test]
    fn girth_values() {
        assert_eq!(named::k33().girth(), Some(4));
        assert_eq!(named::k4().girth(), Some(3));
        assert_eq!(named::petersen().girth(), Some(5));
        assert_eq!(MultiGraph::from_edge_list(&[(0, 1), (1, 2)]).girth(), None);
        assert_eq!(MultiGraph::from_edge_list(&[(0, 1), (1, 0)]).girth(), Some(2));
    }

    #[test]
    fn edge_list_text_roundtrip() {
        let text = "# a labelled triangle\nlabel 0 a0\n0 1\n1 2 # chord\n2 0\nvertex 7\n";
        let g = MultiGraph::parse_edge_list_text(text).unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.label(0), Some("a0"));
        assert_eq!(g.vertex_by_label("a0"), Some(0));
        let again = MultiGraph::parse_edge_list_text(&g.to_edge_list_text()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn edge_list_text_errors() {
        let err = MultiGraph::parse_edge_list_text("0 1\n0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(MultiGraph::parse_edge_list_text("0 1 2\n").is_err());
        assert!(MultiGraph::parse_edge_list_text("label 3\n").is_err());
    }
}

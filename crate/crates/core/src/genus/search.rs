//! Exact minimum genus by backtracking over rotation systems.
//!
//! Vertices receive rotations one at a time in BFS order from a vertex of
//! maximum degree. Every assignment fixes `next(d) = rot(partner(d))` for
//! the darts entering that vertex; partial face walks are kept as chains
//! whose endpoints are linked in O(1), so a face is counted the moment its
//! chain closes. With `f` faces closed, `m` undetermined links and `r` darts
//! not yet on a closed face, at most `f + min(m, r / L)` faces can result,
//! where `L` is a lower bound on face length. A branch is cut when that cannot
//! reach the face count required by the target genus.
//!
//! Genus targets are tried from the Euler lower bound upwards, so the first
//! witness found has minimum genus and is the first one in search order.

use std::collections::{BTreeMap, VecDeque};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::embedding::{cyclic_orders, cyclic_orders_up_to_reversal, RotationSystem};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{partner, DartId, MultiGraph};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Maximum number of search nodes across all targets.
    pub budget: u64,
    /// Known upper bound on the genus; only narrows the interval reported
    /// when the budget runs out.
    pub upper_hint: Option<usize>,
    pub exec: Exec,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            budget: DEFAULT_NODE_BUDGET,
            upper_hint: None,
            exec: Exec::default(),
        }
    }
}

impl SolverOptions {
    pub fn sequential() -> Self {
        SolverOptions {
            exec: Exec::Sequential,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusResult {
    pub genus: usize,
    pub witness: RotationSystem,
    pub nodes_explored: u64,
}

/// Outcome of a search capped at some genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenusBound {
    Exact(GenusResult),
    /// No embedding below the cap exists.
    AtLeast { genus: usize, nodes_explored: u64 },
}

pub fn min_genus(g: &MultiGraph, opts: &SolverOptions) -> Result<GenusResult> {
    match min_genus_capped(g, None, opts)? {
        GenusBound::Exact(r) => Ok(r),
        GenusBound::AtLeast { .. } => unreachable!("uncapped search always resolves"),
    }
}

/// Exact genus if it is below `cap`, otherwise `AtLeast(cap)`. `None`
/// means no cap.
///
/// Genus is additive over blocks, so each block is searched separately and
/// the witnesses are joined by concatenating rotations at cut vertices.
pub fn min_genus_capped(
    g: &MultiGraph,
    cap: Option<usize>,
    opts: &SolverOptions,
) -> Result<GenusBound> {
    match g.num_components() {
        0 => return Err(Error::InvalidArgument("graph has no vertices".into())),
        1 => {}
        components => return Err(Error::Disconnected { components }),
    }
    let blocks = g.blocks();
    if blocks.len() <= 1 {
        return solve_connected(g, cap, opts);
    }

    let mut total = 0;
    let mut nodes = 0u64;
    let mut rotations: BTreeMap<_, Vec<DartId>> =
        g.vertices().iter().map(|&v| (v, Vec::new())).collect();
    for block in &blocks {
        let sub = g.edge_subgraph(block)?;
        let block_opts = SolverOptions {
            budget: opts.budget.saturating_sub(nodes),
            upper_hint: None,
            exec: opts.exec,
        };
        let block_cap = cap.map(|c| c.saturating_sub(total));
        let res = match solve_connected(&sub, block_cap, &block_opts) {
            Ok(GenusBound::Exact(r)) => r,
            Ok(GenusBound::AtLeast { nodes_explored, .. }) => {
                return Ok(GenusBound::AtLeast {
                    genus: cap.expect("only capped searches stop early"),
                    nodes_explored: nodes + nodes_explored,
                })
            }
            Err(Error::SearchBudget { lo, hi, .. }) => {
                let upper = opts.upper_hint.unwrap_or(g.betti() / 2);
                return Err(Error::SearchBudget {
                    budget: opts.budget,
                    lo: total + lo,
                    hi: upper.max(total + hi),
                });
            }
            Err(e) => return Err(e),
        };
        total += res.genus;
        nodes += res.nodes_explored;
        for (v, cycle) in res.witness.iter() {
            let darts = cycle.iter().map(|&d| 2 * block[d / 2] + d % 2);
            rotations.get_mut(&v).unwrap().extend(darts);
        }
    }
    Ok(GenusBound::Exact(GenusResult {
        genus: total,
        witness: RotationSystem::new(g, rotations)?,
        nodes_explored: nodes,
    }))
}

fn solve_connected(
    g: &MultiGraph,
    cap: Option<usize>,
    opts: &SolverOptions,
) -> Result<GenusBound> {
    let problem = Problem::new(g)?;
    let ceiling = problem.max_possible_genus();
    let hi = opts.upper_hint.map_or(ceiling, |h| h.min(ceiling));
    let mut nodes = 0u64;
    for target in problem.lower_bound()..=ceiling {
        if cap.is_some_and(|c| target >= c) {
            return Ok(GenusBound::AtLeast {
                genus: target,
                nodes_explored: nodes,
            });
        }
        let remaining = opts.budget.saturating_sub(nodes);
        match problem.search(target, remaining, opts.exec) {
            Outcome::Found { choices, nodes: n } => {
                nodes += n;
                return Ok(GenusBound::Exact(GenusResult {
                    genus: target,
                    witness: problem.lift(g, &choices),
                    nodes_explored: nodes,
                }));
            }
            Outcome::Exhausted { nodes: n } => nodes += n,
            Outcome::OutOfBudget => {
                return Err(Error::SearchBudget {
                    budget: opts.budget,
                    lo: target,
                    hi: hi.max(target),
                })
            }
        }
    }
    unreachable!("every connected graph embeds with genus at most floor(betti/2)")
}

/// A rotation system of genus at most `target`, if one exists.
pub fn embed_with_genus_at_most(
    g: &MultiGraph,
    target: usize,
    opts: &SolverOptions,
) -> Result<Option<RotationSystem>> {
    let problem = Problem::new(g)?;
    if target >= problem.max_possible_genus() {
        return Ok(Some(min_genus(g, opts)?.witness));
    }
    if target < problem.lower_bound() {
        return Ok(None);
    }
    match problem.search(target, opts.budget, opts.exec) {
        Outcome::Found { choices, .. } => Ok(Some(problem.lift(g, &choices))),
        Outcome::Exhausted { .. } => Ok(None),
        Outcome::OutOfBudget => Err(Error::SearchBudget {
            budget: opts.budget,
            lo: 0,
            hi: problem.max_possible_genus(),
        }),
    }
}

/// Planarity of every component.
pub fn is_planar(g: &MultiGraph) -> Result<bool> {
    is_planar_with(g, &SolverOptions::sequential())
}

pub fn is_planar_with(g: &MultiGraph, opts: &SolverOptions) -> Result<bool> {
    for comp in g.components() {
        let sub = g.induced_subgraph(&comp);
        if embed_with_genus_at_most(&sub, 0, opts)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

enum Outcome {
    Found { choices: Vec<usize>, nodes: u64 },
    Exhausted { nodes: u64 },
    OutOfBudget,
}

/// Dense view of the smoothed graph.
struct Problem {
    num_vertices: usize,
    num_edges: usize,
    num_darts: usize,
    /// Branching vertices in search order with their candidate rotations.
    order: Vec<usize>,
    choices: Vec<Vec<Vec<DartId>>>,
    /// Vertices with a single possible rotation.
    forced: Vec<Vec<DartId>>,
    min_face_len: usize,
    smoothed: MultiGraph,
    dart_map: Vec<DartId>,
}

impl Problem {
    fn new(g: &MultiGraph) -> Result<Problem> {
        match g.num_components() {
            0 => return Err(Error::InvalidArgument("graph has no vertices".into())),
            1 => {}
            components => return Err(Error::Disconnected { components }),
        }
        let (s, dart_map) = g.smooth_tracked();
        let inc = s.incidence();
        let adj = s.adjacency();
        let n = s.num_vertices();

        let root = (0..n).max_by_key(|&v| (inc[v].len(), std::cmp::Reverse(v))).unwrap();
        let mut seen = vec![false; n];
        let mut bfs = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            bfs.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }

        let mut order = Vec::new();
        let mut choices = Vec::new();
        let mut forced = Vec::new();
        for &v in &bfs {
            if inc[v].len() <= 2 {
                forced.push(inc[v].clone());
            } else {
                let c = if order.is_empty() {
                    cyclic_orders_up_to_reversal(&inc[v])
                } else {
                    cyclic_orders(&inc[v])
                };
                order.push(v);
                choices.push(c);
            }
        }

        let min_face_len = if inc.iter().any(|d| d.len() == 1) {
            1
        } else {
            s.girth().unwrap_or(1)
        };
        Ok(Problem {
            num_vertices: n,
            num_edges: s.num_edges(),
            num_darts: s.num_darts(),
            order,
            choices,
            forced,
            min_face_len,
            smoothed: s,
            dart_map,
        })
    }

    fn faces_for_genus(&self, genus: usize) -> i64 {
        2 - 2 * genus as i64 - self.num_vertices as i64 + self.num_edges as i64
    }

    fn max_possible_genus(&self) -> usize {
        (self.num_edges + 1 - self.num_vertices) / 2
    }

    fn lower_bound(&self) -> usize {
        if self.num_edges == 0 {
            return 0;
        }
        let max_faces = (self.num_darts / self.min_face_len) as i64;
        let twice = 2 - self.num_vertices as i64 + self.num_edges as i64 - max_faces;
        (twice.max(0) as usize).div_ceil(2)
    }

    fn search(&self, target: usize, budget: u64, exec: Exec) -> Outcome {
        let need = self.faces_for_genus(target);
        if self.num_edges == 0 {
            return Outcome::Found {
                choices: Vec::new(),
                nodes: 0,
            };
        }
        let mut root = State::new(self.num_darts);
        for cycle in &self.forced {
            root.apply(cycle);
        }
        root.open_links = self.order.iter().map(|&v| self.degree_of(v)).sum();
        if !root.can_reach(need, self.num_darts, self.min_face_len) {
            return Outcome::Exhausted { nodes: 0 };
        }

        // Split the first few levels into independent prefixes.
        let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
        let mut depth = 0;
        while depth < self.order.len() && prefixes.len() < 64 && exec.is_parallel() {
            prefixes = prefixes
                .into_iter()
                .flat_map(|p| {
                    (0..self.choices[depth].len()).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
            depth += 1;
        }

        let nodes = AtomicU64::new(0);
        let out_of_budget = AtomicBool::new(false);
        let found = exec.find_map_first(prefixes, |prefix| {
            let mut st = root.clone();
            for (level, &c) in prefix.iter().enumerate() {
                st.apply(&self.choices[level][c]);
                if !st.can_reach(need, self.num_darts, self.min_face_len) {
                    return None;
                }
            }
            let mut picks = prefix.clone();
            let mut walker = Walker {
                problem: self,
                need,
                budget,
                nodes: &nodes,
                local: 0,
                out_of_budget: &out_of_budget,
            };
            let hit = walker.dfs(&mut st, prefix.len(), &mut picks);
            walker.flush();
            hit.then_some(picks)
        });
        let nodes = nodes.into_inner();
        match found {
            Some(choices) => Outcome::Found { choices, nodes },
            None if out_of_budget.into_inner() => Outcome::OutOfBudget,
            None => Outcome::Exhausted { nodes },
        }
    }

    fn degree_of(&self, v: usize) -> usize {
        self.smoothed.degrees()[v]
    }

    /// Rotation system of the original graph from per-level choices.
    fn lift(&self, g: &MultiGraph, picks: &[usize]) -> RotationSystem {
        let mut smoothed_rot: Vec<Vec<DartId>> = self.smoothed.incidence();
        for (level, &c) in picks.iter().enumerate() {
            smoothed_rot[self.order[level]] = self.choices[level][c].clone();
        }
        let mut rotations: BTreeMap<_, _> = g
            .vertices()
            .iter()
            .copied()
            .zip(g.incidence())
            .collect();
        for (i, &v) in self.smoothed.vertices().iter().enumerate() {
            let cycle = smoothed_rot[i].iter().map(|&d| self.dart_map[d]).collect();
            rotations.insert(v, cycle);
        }
        RotationSystem::new(g, rotations).expect("lifted rotation is valid")
    }
}

#[derive(Clone)]
struct State {
    /// For a chain end, the dart starting its chain.
    start_of: Vec<DartId>,
    /// For a chain start, the dart ending its chain.
    end_of: Vec<DartId>,
    /// Chain length, stored at the chain start.
    len: Vec<usize>,
    faces: usize,
    closed_darts: usize,
    open_links: usize,
    log: Vec<Undo>,
}

#[derive(Clone, Copy)]
enum Undo {
    Close { start: DartId },
    Merge { start: DartId, end: DartId, joined: DartId, tail: DartId },
}

impl State {
    fn new(num_darts: usize) -> State {
        State {
            start_of: (0..num_darts).collect(),
            end_of: (0..num_darts).collect(),
            len: vec![1; num_darts],
            faces: 0,
            closed_darts: 0,
            open_links: 0,
            log: Vec::new(),
        }
    }

    /// Declares `next(end) = joined`.
    #[inline]
    fn link(&mut self, end: DartId, joined: DartId) {
        let start = self.start_of[end];
        if start == joined {
            self.faces += 1;
            self.closed_darts += self.len[start];
            self.log.push(Undo::Close { start });
        } else {
            let tail = self.end_of[joined];
            self.end_of[start] = tail;
            self.start_of[tail] = start;
            self.len[start] += self.len[joined];
            self.log.push(Undo::Merge {
                start,
                end,
                joined,
                tail,
            });
        }
    }

    fn apply(&mut self, cycle: &[DartId]) {
        let k = cycle.len();
        for i in 0..k {
            self.link(partner(cycle[i]), cycle[(i + 1) % k]);
        }
        self.open_links = self.open_links.saturating_sub(k);
    }

    fn undo(&mut self, k: usize) {
        for _ in 0..k {
            match self.log.pop().expect("undo log underflow") {
                Undo::Close { start } => {
                    self.faces -= 1;
                    self.closed_darts -= self.len[start];
                }
                Undo::Merge {
                    start,
                    end,
                    joined,
                    tail,
                } => {
                    self.len[start] -= self.len[joined];
                    self.end_of[start] = end;
                    self.start_of[tail] = joined;
                }
            }
        }
        self.open_links += k;
    }

    #[inline]
    fn can_reach(&self, need: i64, num_darts: usize, min_face_len: usize) -> bool {
        let open_darts = num_darts - self.closed_darts;
        let extra = self.open_links.min(open_darts / min_face_len);
        (self.faces + extra) as i64 >= need
    }
}

struct Walker<'a> {
    problem: &'a Problem,
    need: i64,
    budget: u64,
    nodes: &'a AtomicU64,
    local: u64,
    out_of_budget: &'a AtomicBool,
}

impl Walker<'_> {
    fn flush(&mut self) {
        self.nodes.fetch_add(self.local, Ordering::Relaxed);
        self.local = 0;
    }

    fn dfs(&mut self, st: &mut State, level: usize, picks: &mut Vec<usize>) -> bool {
        let p = self.problem;
        if level == p.order.len() {
            return st.faces as i64 >= self.need;
        }
        for (c, cycle) in p.choices[level].iter().enumerate() {
            self.local += 1;
            if self.local >= 4096 {
                let total = self.nodes.fetch_add(self.local, Ordering::Relaxed) + self.local;
                self.local = 0;
                if total > self.budget {
                    self.out_of_budget.store(true, Ordering::Relaxed);
                }
            }
            if self.out_of_budget.load(Ordering::Relaxed) {
                return false;
            }
            st.apply(cycle);
            if st.can_reach(self.need, p.num_darts, p.min_face_len) {
                picks.push(c);
                if self.dfs(st, level + 1, picks) {
                    return true;
                }
                picks.pop();
            }
            st.undo(cycle.len());
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{enumerate_rotation_systems, genus_of_embedding};
    use crate::graph::bar_amalgamation;
    use crate::named;

    fn genus(g: &MultiGraph) -> usize {
        let r = min_genus(g, &SolverOptions::sequential()).unwrap();
        assert_eq!(genus_of_embedding(g, &r.witness).unwrap(), r.genus);
        let par = min_genus(g, &SolverOptions::default()).unwrap();
        assert_eq!((par.genus, &par.witness), (r.genus, &r.witness));
        r.genus
    }

    fn brute(g: &MultiGraph) -> usize {
        enumerate_rotation_systems(g, 1 << 22, false)
            .unwrap()
            .map(|r| genus_of_embedding(g, &r).unwrap())
            .min()
            .unwrap()
    }

    #[test]
    fn small_known_values() {
        assert_eq!(genus(&named::cycle(7)), 0);
        assert_eq!(genus(&named::path(5)), 0);
        assert_eq!(genus(&MultiGraph::with_vertices(1)), 0);
        assert_eq!(genus(&MultiGraph::from_edge_list(&[(0, 0)])), 0);
        assert_eq!(genus(&named::k4()), 0);
        assert_eq!(genus(&named::k33()), 1);
        assert_eq!(genus(&named::k5()), 1);
        assert_eq!(genus(&named::petersen()), 1);
        assert_eq!(genus(&named::complete(6)), 1);
        assert_eq!(genus(&named::complete_bipartite(4, 4)), 1);
    }

    #[test]
    fn agrees_with_brute_force() {
        let graphs = [
            named::k33(),
            named::k5(),
            named::wheel(5),
            named::k33().subdivide(3, 2).unwrap(),
            MultiGraph::from_edge_list(&[(0, 0), (0, 1), (1, 1), (0, 1), (1, 2), (2, 0)]),
            MultiGraph::from_edge_list(&[(0, 1), (0, 1), (0, 1), (0, 1), (1, 2), (2, 0), (2, 2)]),
        ];
        for g in &graphs {
            assert_eq!(genus(g), brute(g), "{:?}", g.edge_list());
        }
    }

    #[test]
    fn additive_over_bar_amalgamation() {
        let k33 = named::k33();
        let g = bar_amalgamation(&k33, 0, &k33, 3).unwrap();
        assert_eq!(genus(&g), 2);
        let g = bar_amalgamation(&g, 2, &named::k5(), 1).unwrap();
        assert_eq!(genus(&g), 3);
    }

    #[test]
    fn planarity() {
        assert!(is_planar(&named::k4()).unwrap());
        assert!(!is_planar(&named::k33()).unwrap());
        assert!(is_planar(&MultiGraph::from_edge_list(&[(0, 1), (2, 3), (3, 4)])).unwrap());
        let (two, _) = named::k4().disjoint_union(&named::k5());
        assert!(!is_planar(&two).unwrap());
    }

    #[test]
    fn capped_search() {
        let opts = SolverOptions::sequential();
        match min_genus_capped(&named::k33(), Some(1), &opts).unwrap() {
            GenusBound::AtLeast { genus, .. } => assert_eq!(genus, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            min_genus_capped(&named::k33(), Some(2), &opts).unwrap(),
            GenusBound::Exact(GenusResult { genus: 1, .. })
        ));
    }

    #[test]
    fn budget_exhaustion_reports_interval() {
        let opts = SolverOptions {
            budget: 10,
            ..SolverOptions::sequential()
        };
        let g = named::complete_bipartite(4, 4);
        match min_genus(&g, &opts) {
            Err(Error::SearchBudget { budget: 10, lo, hi }) => assert!(lo <= 1 && 1 <= hi),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_disconnected() {
        let g = MultiGraph::from_edge_list(&[(0, 1), (2, 3)]);
        assert_eq!(
            min_genus(&g, &SolverOptions::default()).unwrap_err(),
            Error::Disconnected { components: 2 }
        );
    }
}

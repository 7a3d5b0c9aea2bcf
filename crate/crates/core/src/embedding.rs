//! Rotation systems and face tracing.
//!
//! Orientation convention: a dart leaves its owner. Face tracing follows
//! `next(d) = rot(partner(d))`, i.e. after arriving at a vertex through
//! `partner(d)` the walk continues with the dart that follows `partner(d)` in
//! that vertex's cyclic order. Mirroring every rotation gives the same genus.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{partner, DartId, MultiGraph, VertexId};

/// Cyclic order of darts at every vertex, each cycle stored starting from its
/// smallest dart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RotationSystem {
    rotations: BTreeMap<VertexId, Vec<DartId>>,
}

fn canonical_cycle(mut cycle: Vec<DartId>) -> Vec<DartId> {
    if let Some((pos, _)) = cycle.iter().enumerate().min_by_key(|(_, &d)| d) {
        cycle.rotate_left(pos);
    }
    cycle
}

impl RotationSystem {
    /// Builds and validates a rotation system from per-vertex cycles.
    pub fn new(g: &MultiGraph, rotations: BTreeMap<VertexId, Vec<DartId>>) -> Result<Self> {
        let rot = RotationSystem {
            rotations: rotations
                .into_iter()
                .map(|(v, c)| (v, canonical_cycle(c)))
                .collect(),
        };
        rot.validate(g)?;
        Ok(rot)
    }

    /// Cycles given in vertex-position order.
    pub fn from_cycles(g: &MultiGraph, cycles: Vec<Vec<DartId>>) -> Result<Self> {
        if cycles.len() != g.num_vertices() {
            return Err(Error::InvalidRotation(format!(
                "{} cycles for {} vertices",
                cycles.len(),
                g.num_vertices()
            )));
        }
        Self::new(g, g.vertices().iter().copied().zip(cycles).collect())
    }

    /// Every vertex lists its darts in increasing id order.
    pub fn identity(g: &MultiGraph) -> Self {
        RotationSystem {
            rotations: g.vertices().iter().copied().zip(g.incidence()).collect(),
        }
    }

    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let inc = g.incidence();
        if self.rotations.len() != g.num_vertices() {
            return Err(Error::InvalidRotation("vertex set mismatch".into()));
        }
        for (i, &v) in g.vertices().iter().enumerate() {
            let cycle = self
                .rotations
                .get(&v)
                .ok_or_else(|| Error::InvalidRotation(format!("no rotation for vertex {v}")))?;
            let mut sorted = cycle.clone();
            sorted.sort_unstable();
            if sorted != inc[i] {
                return Err(Error::InvalidRotation(format!(
                    "rotation at {v} is not a permutation of its darts"
                )));
            }
        }
        Ok(())
    }

    pub fn rotation_at(&self, v: VertexId) -> Option<&[DartId]> {
        self.rotations.get(&v).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &[DartId])> {
        self.rotations.iter().map(|(&v, c)| (v, c.as_slice()))
    }

    /// `succ[d]` is the dart after `d` at its owner.
    pub fn successors(&self, num_darts: usize) -> Vec<DartId> {
        let mut succ = vec![usize::MAX; num_darts];
        for cycle in self.rotations.values() {
            for (i, &d) in cycle.iter().enumerate() {
                succ[d] = cycle[(i + 1) % cycle.len()];
            }
        }
        succ
    }

    pub fn mirrored(&self) -> Self {
        RotationSystem {
            rotations: self
                .rotations
                .iter()
                .map(|(&v, c)| (v, canonical_cycle(c.iter().rev().copied().collect())))
                .collect(),
        }
    }

    /// One line per vertex: `v: d1 d2 ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, cycle) in &self.rotations {
            write!(out, "{v}:").unwrap();
            for d in cycle {
                write!(out, " {d}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_text(g: &MultiGraph, text: &str) -> Result<Self> {
        let mut rotations = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| Error::Parse { line: i + 1, reason };
            let (head, tail) = line
                .split_once(':')
                .ok_or_else(|| err("expected `v: d1 d2 ...`".into()))?;
            let v: VertexId = head
                .trim()
                .parse()
                .map_err(|_| err(format!("bad vertex {head:?}")))?;
            let darts = tail
                .split_whitespace()
                .map(|t| t.parse::<DartId>().map_err(|_| err(format!("bad dart {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if rotations.insert(v, darts).is_some() {
                return Err(err(format!("vertex {v} listed twice")));
            }
        }
        Self::new(g, rotations)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDecomposition {
    /// Each face as the cyclic sequence of darts along its boundary walk.
    pub faces: Vec<Vec<DartId>>,
    pub face_count: usize,
    pub genus: usize,
}

impl FaceDecomposition {
    pub fn boundary_vertices(&self, g: &MultiGraph, face: usize) -> BTreeSet<VertexId> {
        let darts = &self.faces[face];
        if darts.is_empty() {
            return g.vertices().iter().copied().collect();
        }
        darts.iter().map(|&d| g.owner(d)).collect()
    }
}

fn require_connected(g: &MultiGraph) -> Result<()> {
    match g.num_components() {
        0 => Err(Error::InvalidArgument("graph has no vertices".into())),
        1 => Ok(()),
        components => Err(Error::Disconnected { components }),
    }
}

/// Euler genus from vertex, edge and face counts of a connected embedding.
pub(crate) fn euler_genus(v: usize, e: usize, f: usize) -> usize {
    let twice = 2 + e as i64 - v as i64 - f as i64;
    debug_assert!(twice >= 0 && twice % 2 == 0, "Euler identity violated");
    (twice / 2) as usize
}

pub fn trace_faces(g: &MultiGraph, rot: &RotationSystem) -> Result<FaceDecomposition> {
    require_connected(g)?;
    rot.validate(g)?;
    let n = g.num_darts();
    if n == 0 {
        return Ok(FaceDecomposition {
            faces: vec![Vec::new()],
            face_count: 1,
            genus: 0,
        });
    }
    let succ = rot.successors(n);
    let mut seen = vec![false; n];
    let mut faces = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            face.push(d);
            d = succ[partner(d)];
        }
        faces.push(face);
    }
    let face_count = faces.len();
    Ok(FaceDecomposition {
        faces,
        face_count,
        genus: euler_genus(g.num_vertices(), g.num_edges(), face_count),
    })
}

pub fn genus_of_embedding(g: &MultiGraph, rot: &RotationSystem) -> Result<usize> {
    Ok(trace_faces(g, rot)?.genus)
}

/// True iff one face's boundary walk visits every vertex in `targets`.
pub fn face_with_vertices(fd: &FaceDecomposition, g: &MultiGraph, targets: &[VertexId]) -> bool {
    (0..fd.faces.len()).any(|f| {
        let boundary = fd.boundary_vertices(g, f);
        targets.iter().all(|t| boundary.contains(t))
    })
}

/// All cyclic orders of `darts` (sorted), first dart held in front.
pub(crate) fn cyclic_orders(darts: &[DartId]) -> Vec<Vec<DartId>> {
    match darts {
        [] => vec![Vec::new()],
        [first, rest @ ..] => rest
            .iter()
            .copied()
            .permutations(rest.len())
            .map(|p| std::iter::once(*first).chain(p).collect())
            .collect(),
    }
}

/// Cyclic orders that are not larger than their own reversal. Covers every
/// rotation up to global mirroring, which preserves face counts.
pub(crate) fn cyclic_orders_up_to_reversal(darts: &[DartId]) -> Vec<Vec<DartId>> {
    cyclic_orders(darts)
        .into_iter()
        .filter(|c| {
            let tail = &c[1.min(c.len())..];
            let rev: Vec<_> = tail.iter().rev().copied().collect();
            tail <= rev.as_slice()
        })
        .collect()
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Number of rotation systems: product of `(deg(v) - 1)!`.
pub fn rotation_count(g: &MultiGraph) -> u128 {
    g.degrees()
        .iter()
        .map(|&d| factorial(d.saturating_sub(1)))
        .fold(1u128, |acc, x| acc.saturating_mul(x))
}

/// Indexable enumeration of rotation systems in mixed-radix order (last
/// vertex varies fastest). Disjoint index ranges can be consumed in parallel.
#[derive(Clone, Debug)]
pub struct RotationEnumerator {
    vertices: Vec<VertexId>,
    choices: Vec<Vec<Vec<DartId>>>,
    total: u128,
    next: u128,
    end: u128,
}

/// Every rotation system of `g`, refusing when there are more than `budget`.
///
/// With `break_symmetry` the first vertex of degree at least 3 only ranges
/// over cyclic orders up to reversal (a single order when cubic). That
/// subset still realises every genus value, so it is only valid as a
/// min/max genus oracle.
pub fn enumerate_rotation_systems(
    g: &MultiGraph,
    budget: u128,
    break_symmetry: bool,
) -> Result<RotationEnumerator> {
    let inc = g.incidence();
    let designated = break_symmetry
        .then(|| inc.iter().position(|ds| ds.len() >= 3))
        .flatten();
    let choices: Vec<Vec<Vec<DartId>>> = inc
        .iter()
        .enumerate()
        .map(|(i, ds)| {
            if Some(i) == designated {
                cyclic_orders_up_to_reversal(ds)
            } else {
                cyclic_orders(ds)
            }
        })
        .collect();
    let total = choices
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if total > budget {
        return Err(Error::BudgetRefused { count: total, budget });
    }
    Ok(RotationEnumerator {
        vertices: g.vertices().to_vec(),
        choices,
        total,
        next: 0,
        end: total,
    })
}

impl RotationEnumerator {
    pub fn total(&self) -> u128 {
        self.total
    }

    /// The rotation system at `index` in enumeration order.
    pub fn at(&self, mut index: u128) -> Option<RotationSystem> {
        if index >= self.total {
            return None;
        }
        let mut picks = vec![0usize; self.choices.len()];
        for (i, c) in self.choices.iter().enumerate().rev() {
            let radix = c.len() as u128;
            picks[i] = (index % radix) as usize;
            index /= radix;
        }
        let rotations = self
            .vertices
            .iter()
            .zip(&self.choices)
            .zip(picks)
            .map(|((&v, c), p)| (v, c[p].clone()))
            .collect();
        Some(RotationSystem { rotations })
    }

    /// Restricts iteration to `start..end`.
    pub fn range(mut self, start: u128, end: u128) -> Self {
        self.end = end.min(self.total);
        self.next = start.min(self.end);
        self
    }
}

impl Iterator for RotationEnumerator {
    type Item = RotationSystem;

    fn next(&mut self) -> Option<RotationSystem> {
        if self.next >= self.end {
            return None;
        }
        let r = self.at(self.next);
        self.next += 1;
        r
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.end - self.next).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

/// Image of a graph homeomorphic to a subgraph of a host: branch vertex map
/// plus, for every edge `e` of the subgraph, the host dart path it follows
/// from the image of `owner(2e)` to the image of `owner(2e + 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphMap {
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub edge_paths: Vec<Vec<DartId>>,
}

impl SubgraphMap {
    /// `sub` is a spanning-or-smaller subgraph of `g` sharing vertex ids, its
    /// edges identified with `g`'s edges by `edge_ids`.
    pub fn from_edge_subset(sub: &MultiGraph, edge_ids: &[usize]) -> Self {
        SubgraphMap {
            vertex_map: sub.vertices().iter().map(|&v| (v, v)).collect(),
            edge_paths: edge_ids.iter().map(|&e| vec![2 * e]).collect(),
        }
    }

    fn check(&self, g: &MultiGraph, sub: &MultiGraph) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidMapping(s));
        let mut images = BTreeSet::new();
        for &x in sub.vertices() {
            let Some(&y) = self.vertex_map.get(&x) else {
                return bad(format!("vertex {x} is unmapped"));
            };
            if !g.contains_vertex(y) {
                return bad(format!("vertex {x} maps outside the host"));
            }
            if !images.insert(y) {
                return bad(format!("host vertex {y} is the image of two vertices"));
            }
        }
        if self.edge_paths.len() != sub.num_edges() {
            return bad("one path per edge required".into());
        }
        let mut used_edges = BTreeSet::new();
        let mut interior = BTreeSet::new();
        for (e, path) in self.edge_paths.iter().enumerate() {
            let (a, b) = sub.edge(e).unwrap();
            if path.is_empty() {
                return bad(format!("edge {e} has an empty path"));
            }
            if path.iter().any(|&d| d >= g.num_darts()) {
                return bad(format!("edge {e} uses a dart outside the host"));
            }
            if g.owner(path[0]) != self.vertex_map[&a]
                || g.owner(partner(*path.last().unwrap())) != self.vertex_map[&b]
            {
                return bad(format!("path of edge {e} has wrong endpoints"));
            }
            for w in path.windows(2) {
                let mid = g.owner(w[1]);
                if g.owner(partner(w[0])) != mid {
                    return bad(format!("path of edge {e} is not contiguous"));
                }
                if images.contains(&mid) || !interior.insert(mid) {
                    return bad(format!("path of edge {e} reuses vertex {mid}"));
                }
            }
            for &d in path {
                if !used_edges.insert(d / 2) {
                    return bad(format!("host edge {} used twice", d / 2));
                }
            }
        }
        Ok(())
    }
}

/// Restricts `rot` to the image of `sub` and reads it back in `sub`'s darts.
pub fn induced_embedding(
    g: &MultiGraph,
    rot: &RotationSystem,
    sub: &MultiGraph,
    map: &SubgraphMap,
) -> Result<RotationSystem> {
    rot.validate(g)?;
    map.check(g, sub)?;
    let mut host_to_sub = BTreeMap::new();
    for (e, path) in map.edge_paths.iter().enumerate() {
        host_to_sub.insert(path[0], 2 * e);
        host_to_sub.insert(partner(*path.last().unwrap()), 2 * e + 1);
    }
    let mut rotations = BTreeMap::new();
    for &x in sub.vertices() {
        let y = map.vertex_map[&x];
        let cycle: Vec<DartId> = rot
            .rotation_at(y)
            .unwrap()
            .iter()
            .filter_map(|d| host_to_sub.get(d).copied())
            .collect();
        rotations.insert(x, cycle);
    }
    RotationSystem::new(sub, rotations)
}

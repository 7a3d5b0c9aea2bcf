//! Scaffolding with copies of H₃.
//!
//! H₃ is K₂,₃ with a pendant vertex hung off each of its three middle
//! vertices. Scaffolding a host graph along a set of vertex triples glues one
//! copy per triple, identifying the three pendant (free) nodes with the triple.
//! The chorded family of a host replaces each copy by a single edge between two
//! of its triple vertices; the minimum genus over that family plus the number of
//! triples is the genus of the scaffolded graph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::genus::{
    deficiency_of_tree, max_genus, min_genus, verify_xuong_tree, GenusResult, SolverOptions,
};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::named;

/// The three pairs of a triple, in enumeration order.
pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

pub const H3_HUBS: [VertexId; 2] = [0, 1];
pub const H3_MIDDLES: [VertexId; 3] = [2, 3, 4];
pub const H3_FREE_NODES: [VertexId; 3] = [5, 6, 7];

/// H₃ with hubs 0 and 1, middles 2..=4 and free nodes 5..=7.
///
/// Edges 0..3 join hub 0 to the middles, 3..6 join the middles to hub 1, and
/// 6..9 are the free edges.
pub fn build_h3() -> MultiGraph {
    let mut pairs = Vec::with_capacity(9);
    for &m in &H3_MIDDLES {
        pairs.push((H3_HUBS[0], m));
    }
    for &m in &H3_MIDDLES {
        pairs.push((m, H3_HUBS[1]));
    }
    for i in 0..3 {
        pairs.push((H3_MIDDLES[i], H3_FREE_NODES[i]));
    }
    MultiGraph::from_edge_list(&pairs)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSet {
    pub triples: Vec<[VertexId; 3]>,
}

impl TripleSet {
    pub fn new(triples: Vec<[VertexId; 3]>) -> Self {
        TripleSet { triples }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Every vertex must be 2-valent in `host` and used by one triple only.
    pub fn validate(&self, host: &MultiGraph) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for (i, t) in self.triples.iter().enumerate() {
            for &v in t {
                if !host.contains_vertex(v) {
                    return Err(Error::MissingVertex(v));
                }
                if host.degree(v) != 2 {
                    return Err(Error::Scaffold(format!(
                        "vertex {v} of triple {i} has degree {}, expected 2",
                        host.degree(v)
                    )));
                }
                if !seen.insert(v) {
                    return Err(Error::Scaffold(format!("vertex {v} appears in more than one triple")));
                }
            }
        }
        Ok(())
    }
}

/// Where one H₃ copy sits inside a scaffolded graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaffoldCopy {
    pub hubs: [VertexId; 2],
    pub middles: [VertexId; 3],
    /// Host vertices the free nodes were identified with.
    pub free_nodes: [VertexId; 3],
    /// The copy's nine edges in H₃ edge order.
    pub edges: [EdgeId; 9],
}

impl ScaffoldCopy {
    pub fn free_edges(&self) -> [EdgeId; 3] {
        [self.edges[6], self.edges[7], self.edges[8]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaffoldResult {
    pub graph: MultiGraph,
    pub copies: Vec<ScaffoldCopy>,
}

/// Builds H(host, t). Host vertex and edge ids are kept; each copy adds five
/// fresh vertices and nine edges.
pub fn scaffold(host: &MultiGraph, t: &TripleSet) -> Result<ScaffoldResult> {
    t.validate(host)?;
    let h3 = build_h3();
    let mut g = host.clone();
    let mut copies = Vec::with_capacity(t.len());
    for (i, triple) in t.triples.iter().enumerate() {
        let mut map = [0; 8];
        for v in H3_HUBS.iter().chain(&H3_MIDDLES) {
            map[*v] = g.add_fresh_vertex();
        }
        for (k, &f) in H3_FREE_NODES.iter().enumerate() {
            map[f] = triple[k];
        }
        let mut edges = [0; 9];
        for (e, (u, v)) in h3.edges().enumerate() {
            edges[e] = g.add_edge(map[u], map[v])?;
        }
        for (k, &h) in H3_HUBS.iter().enumerate() {
            g.set_label(map[h], format!("t{i}.h{k}"))?;
        }
        for (k, &m) in H3_MIDDLES.iter().enumerate() {
            g.set_label(map[m], format!("t{i}.m{k}"))?;
        }
        copies.push(ScaffoldCopy {
            hubs: [map[0], map[1]],
            middles: [map[2], map[3], map[4]],
            free_nodes: *triple,
            edges,
        });
    }
    Ok(ScaffoldResult { graph: g, copies })
}

/// One pair index (into [`PAIRS`]) per triple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChordAssignment {
    pub pairs: Vec<u8>,
}

impl ChordAssignment {
    /// The `index`-th assignment in lexicographic order, first triple most
    /// significant.
    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut pairs = vec![0u8; n];
        for p in pairs.iter_mut().rev() {
            *p = (index % 3) as u8;
            index /= 3;
        }
        ChordAssignment { pairs }
    }

    pub fn index(&self) -> usize {
        self.pairs.iter().fold(0, |acc, &p| acc * 3 + p as usize)
    }

    pub fn chords(&self, t: &TripleSet) -> Vec<(VertexId, VertexId)> {
        self.pairs
            .iter()
            .zip(&t.triples)
            .map(|(&p, tr)| {
                let (i, j) = PAIRS[p as usize];
                (tr[i], tr[j])
            })
            .collect()
    }

    /// Host plus the chosen chords, appended after the host edges in triple order.
    pub fn apply(&self, host: &MultiGraph, t: &TripleSet) -> Result<MultiGraph> {
        let mut g = host.clone();
        for (u, v) in self.chords(t) {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Short form such as `ab ac bc`.
    pub fn describe(&self) -> String {
        self.pairs
            .iter()
            .map(|&p| ["ab", "ac", "bc"][p as usize])
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn chording_count(t: &TripleSet) -> usize {
    3usize.pow(t.len() as u32)
}

/// All 3ⁿ chorded graphs in lexicographic assignment order.
pub fn enumerate_chordings<'a>(
    host: &'a MultiGraph,
    t: &'a TripleSet,
) -> Result<impl Iterator<Item = (ChordAssignment, MultiGraph)> + 'a> {
    t.validate(host)?;
    Ok((0..chording_count(t)).map(move |i| {
        let a = ChordAssignment::from_index(t.len(), i);
        let g = a.apply(host, t).expect("validated triples name host vertices");
        (a, g)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordingGenus {
    pub assignment: ChordAssignment,
    pub genus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaT {
    pub gamma: usize,
    /// First assignment (in enumeration order) reaching the minimum.
    pub best: ChordAssignment,
    pub witness: GenusResult,
    pub per_chording: Vec<ChordingGenus>,
}

/// Minimum genus over every chording, with the genus of each one.
pub fn gamma_t(host: &MultiGraph, t: &TripleSet, opts: &SolverOptions) -> Result<GammaT> {
    t.validate(host)?;
    let inner = SolverOptions {
        exec: Exec::Sequential,
        ..*opts
    };
    let indices: Vec<usize> = (0..chording_count(t)).collect();
    let results = opts.exec.map(indices, |i| {
        let a = ChordAssignment::from_index(t.len(), i);
        let g = a.apply(host, t)?;
        min_genus(&g, &inner).map(|r| (a, r))
    });
    let mut best: Option<(ChordAssignment, GenusResult)> = None;
    let mut per_chording = Vec::with_capacity(results.len());
    for r in results {
        let (a, res) = r?;
        per_chording.push(ChordingGenus {
            assignment: a.clone(),
            genus: res.genus,
        });
        if best.as_ref().map_or(true, |(_, b)| res.genus < b.genus) {
            best = Some((a, res));
        }
    }
    let (best, witness) = best.expect("at least one chording");
    Ok(GammaT {
        gamma: witness.genus,
        best,
        witness,
        per_chording,
    })
}

/// Genus of the scaffolded graph, obtained as γ_T + n.
pub fn scaffold_genus(host: &MultiGraph, t: &TripleSet, opts: &SolverOptions) -> Result<usize> {
    Ok(gamma_t(host, t, opts)?.gamma + t.len())
}

/// Spanning tree of the scaffolded graph extending `host_tree` by the three
/// free edges, hub 0 to middle 0, and middle 2 to hub 1 of every copy.
pub fn extend_xuong_tree(
    host: &MultiGraph,
    host_tree: &[EdgeId],
    s: &ScaffoldResult,
) -> Result<Vec<EdgeId>> {
    deficiency_of_tree(host, host_tree)?;
    let mut tree = host_tree.to_vec();
    for c in &s.copies {
        tree.extend(c.free_edges());
        tree.push(c.edges[0]);
        tree.push(c.edges[5]);
    }
    tree.sort_unstable();
    Ok(tree)
}

fn labelled_cycle(names: &[String]) -> MultiGraph {
    let n = names.len();
    let mut g = named::cycle(n);
    for (v, name) in names.iter().enumerate() {
        g.set_label(v, name.clone()).expect("cycle vertex");
    }
    g
}

fn triples_by_label(g: &MultiGraph, indices: impl IntoIterator<Item = usize>) -> TripleSet {
    let find = |s: String| g.vertex_by_label(&s).expect("labelled vertex");
    TripleSet::new(
        indices
            .into_iter()
            .map(|i| [find(format!("a{i}")), find(format!("b{i}")), find(format!("c{i}"))])
            .collect(),
    )
}

/// The 15-cycle a₀..a₄ b₀..b₄ c₀..c₄ with vertices numbered 0..15 in that order.
pub fn cycle15() -> MultiGraph {
    let names: Vec<String> = ["a", "b", "c"]
        .iter()
        .flat_map(|p| (0..5).map(move |i| format!("{p}{i}")))
        .collect();
    labelled_cycle(&names)
}

/// Host graph and triples of the genus-`k` Milgram graph, k ∈ {4, 5, 6}.
///
/// k = 6 is the labelled 15-cycle with triples {aᵢ, bᵢ, cᵢ}, i = 0..5; k = 5
/// drops triple 0 for the chord a₀b₀. k = 4 is the 13-cycle
/// c₁ c₂ d₀ a₀ a₁ a₂ d₁ d₂ b₀ b₁ b₂ d₃ c₀ with crossing chords d₀d₂ and d₁d₃
/// and triples i = 0..3, homeomorphic to the k = 5 host with triple 4
/// replaced by the chord a₄b₄.
pub fn milgram_graph(k: usize) -> Result<(MultiGraph, TripleSet)> {
    match k {
        6 => {
            let g = cycle15();
            let t = triples_by_label(&g, 0..5);
            Ok((g, t))
        }
        5 => {
            let mut g = cycle15();
            let (a0, b0) = (g.vertex_by_label("a0").unwrap(), g.vertex_by_label("b0").unwrap());
            g.add_edge(a0, b0)?;
            let t = triples_by_label(&g, 1..5);
            Ok((g, t))
        }
        4 => {
            let names: Vec<String> = [
                "c1", "c2", "d0", "a0", "a1", "a2", "d1", "d2", "b0", "b1", "b2", "d3", "c0",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            let mut g = labelled_cycle(&names);
            let at = |g: &MultiGraph, s: &str| g.vertex_by_label(s).unwrap();
            let (d0, d1, d2, d3) = (at(&g, "d0"), at(&g, "d1"), at(&g, "d2"), at(&g, "d3"));
            g.add_edge(d0, d2)?;
            g.add_edge(d1, d3)?;
            let t = triples_by_label(&g, 0..3);
            Ok((g, t))
        }
        _ => Err(Error::InvalidArgument(format!(
            "Milgram graphs exist for k = 4, 5, 6, not {k}"
        ))),
    }
}

/// W₅ (hub 0, rim 1..=5) with spokes 0–1 and 0–3 and rim edge 4–5 subdivided.
/// The subdivision vertices 6, 7, 8 form the single triple; no two of them
/// share a face in the planar embedding.
pub fn w5_host() -> (MultiGraph, TripleSet) {
    let w = named::wheel(5);
    let find = |g: &MultiGraph, u, v| {
        g.edges()
            .position(|e| e == (u, v) || e == (v, u))
            .expect("wheel edge")
    };
    let mut g = w;
    for (u, v) in [(0, 1), (0, 3), (4, 5)] {
        let e = find(&g, u, v);
        g = g.subdivide(e, 1).expect("edge exists");
    }
    for (v, name) in [(6, "b"), (7, "a"), (8, "c")] {
        g.set_label(v, name).unwrap();
    }
    let t = TripleSet::new(vec![[7, 6, 8]]);
    (g, t)
}

/// The triangle with its vertex set as the only triple.
pub fn c3_host() -> (MultiGraph, TripleSet) {
    (named::cycle(3), TripleSet::new(vec![[0, 1, 2]]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilgramReport {
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    pub betti: usize,
    pub is_cubic: bool,
    pub gamma_t: usize,
    pub genus: usize,
    pub max_genus: usize,
    pub upper_embeddable: bool,
    pub best_chording: ChordAssignment,
    pub chording_witness: String,
    pub host_tree: Vec<EdgeId>,
    pub xuong_tree: Vec<EdgeId>,
    pub deficiency: usize,
}

/// Builds M_k and derives its invariants: genus from γ_T + n and maximum
/// genus from an extended Xuong tree of the host.
pub fn milgram_report(k: usize, opts: &SolverOptions) -> Result<MilgramReport> {
    let (host, t) = milgram_graph(k)?;
    let s = scaffold(&host, &t)?;
    let g = &s.graph;
    let gt = gamma_t(&host, &t, opts)?;
    let host_cert = max_genus(&host)?;
    if !host_cert.optimal {
        return Err(Error::Inconclusive("host Xuong tree not proven optimal".into()));
    }
    let tree = extend_xuong_tree(&host, &host_cert.tree_edges, &s)?;
    let cert = verify_xuong_tree(g, &tree)?;
    let betti = g.betti();
    // deficiency equal to betti mod 2 cannot be improved
    if cert.deficiency != betti % 2 {
        return Err(Error::Inconclusive(format!(
            "extended tree has deficiency {}, above the parity bound",
            cert.deficiency
        )));
    }
    Ok(MilgramReport {
        k,
        vertices: g.num_vertices(),
        edges: g.num_edges(),
        betti,
        is_cubic: g.degrees().iter().all(|&d| d == 3),
        gamma_t: gt.gamma,
        genus: gt.gamma + t.len(),
        max_genus: cert.max_genus,
        upper_embeddable: cert.max_genus == betti / 2,
        best_chording: gt.best,
        chording_witness: gt.witness.witness.to_text(),
        host_tree: host_cert.tree_edges,
        xuong_tree: tree,
        deficiency: cert.deficiency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{enumerate_rotation_systems, face_with_vertices, trace_faces};
    use crate::genus::{is_planar, is_upper_embeddable};

    fn opts() -> SolverOptions {
        SolverOptions::default()
    }

    #[test]
    fn h3_shape() {
        let h = build_h3();
        assert_eq!((h.num_vertices(), h.num_edges(), h.betti()), (8, 9, 2));
        let mut deg = h.degrees();
        deg.sort();
        assert_eq!(deg, vec![1, 1, 1, 3, 3, 3, 3, 3]);
        assert!(is_planar(&h).unwrap());
    }

    #[test]
    fn h3_embeddings() {
        let h = build_h3();
        let all: Vec<_> = enumerate_rotation_systems(&h, 1000, false).unwrap().collect();
        assert_eq!(all.len(), 32);
        for rot in &all {
            let fd = trace_faces(&h, rot).unwrap();
            let together = face_with_vertices(&fd, &h, &H3_FREE_NODES);
            assert_eq!(together, fd.genus >= 1);
            if fd.genus >= 1 {
                assert_eq!((fd.genus, fd.face_count), (1, 1));
            }
        }
    }

    #[test]
    fn scaffold_counts() {
        let (host, t) = c3_host();
        let s = scaffold(&host, &t).unwrap();
        assert_eq!(s.graph.num_vertices(), 8);
        assert_eq!(s.graph.num_edges(), 12);
        assert_eq!(s.graph.betti(), 5);
        assert!(s.graph.degrees().iter().all(|&d| d == 3));
        assert_eq!(s.graph.edge(0), host.edge(0));

        let (host, t) = milgram_graph(6).unwrap();
        let s = scaffold(&host, &t).unwrap();
        assert_eq!((s.graph.num_vertices(), s.graph.num_edges(), s.graph.betti()), (40, 60, 21));
        let (host, t) = milgram_graph(4).unwrap();
        let s = scaffold(&host, &t).unwrap();
        assert_eq!((s.graph.num_vertices(), s.graph.betti()), (28, 15));
        let (host, t) = milgram_graph(5).unwrap();
        let s = scaffold(&host, &t).unwrap();
        assert_eq!((s.graph.num_vertices(), s.graph.betti()), (35, 18));
    }

    #[test]
    fn triple_validation() {
        let (host, _) = c3_host();
        let bad = TripleSet::new(vec![[0, 1, 7]]);
        assert!(matches!(scaffold(&host, &bad), Err(Error::MissingVertex(7))));
        let host = named::cycle(6);
        let reuse = TripleSet::new(vec![[0, 1, 2], [2, 3, 4]]);
        assert!(matches!(scaffold(&host, &reuse), Err(Error::Scaffold(_))));
        let k4 = named::k4();
        let cubic = TripleSet::new(vec![[0, 1, 2]]);
        assert!(matches!(scaffold(&k4, &cubic), Err(Error::Scaffold(_))));
    }

    #[test]
    fn chording_order() {
        let host = named::cycle(6);
        let t = TripleSet::new(vec![[0, 2, 4], [1, 3, 5]]);
        let all: Vec<_> = enumerate_chordings(&host, &t).unwrap().collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0].0.chords(&t), vec![(0, 2), (1, 3)]);
        assert_eq!(all[1].0.chords(&t), vec![(0, 2), (1, 5)]);
        assert_eq!(all[3].0.chords(&t), vec![(0, 4), (1, 3)]);
        for (i, (a, g)) in all.iter().enumerate() {
            assert_eq!(a.index(), i);
            assert_eq!(g.betti(), host.betti() + 2);
        }
    }

    #[test]
    fn triangle_scaffold() {
        let (host, t) = c3_host();
        assert_eq!(gamma_t(&host, &t, &opts()).unwrap().gamma, 0);
        assert_eq!(scaffold_genus(&host, &t, &opts()).unwrap(), 1);
        let s = scaffold(&host, &t).unwrap();
        assert_eq!(min_genus(&s.graph, &opts()).unwrap().genus, 1);
    }

    #[test]
    fn w5_host_faces() {
        let (host, t) = w5_host();
        assert_eq!((host.num_vertices(), host.num_edges()), (9, 13));
        assert!(is_planar(&host).unwrap());
        let g = crate::genus::min_genus(&host, &opts()).unwrap();
        let fd = trace_faces(&host, &g.witness).unwrap();
        let [a, b, c] = t.triples[0];
        for pair in [[a, b], [a, c], [b, c]] {
            assert!(!face_with_vertices(&fd, &host, &pair));
        }
        assert_eq!(scaffold_genus(&host, &t, &opts()).unwrap(), 2);
    }

    #[test]
    fn xuong_extension_keeps_deficiency() {
        let (host, t) = c3_host();
        let s = scaffold(&host, &t).unwrap();
        let tree = extend_xuong_tree(&host, &[0, 1], &s).unwrap();
        assert_eq!(
            deficiency_of_tree(&s.graph, &tree).unwrap(),
            deficiency_of_tree(&host, &[0, 1]).unwrap()
        );
        assert!(is_upper_embeddable(&s.graph).unwrap());
        assert!(extend_xuong_tree(&host, &[0], &s).is_err());
    }

    #[test]
    fn milgram_invariants() {
        for (k, want) in [(4, (28, 15, 4, 7)), (5, (35, 18, 5, 9)), (6, (40, 21, 6, 10))] {
            let r = milgram_report(k, &opts()).unwrap();
            assert_eq!((r.vertices, r.betti, r.genus, r.max_genus), want, "k = {k}");
            assert!(r.upper_embeddable);
            assert_eq!(r.is_cubic, k != 5);
            assert_eq!(r.gamma_t, 1);
        }
    }

    #[test]
    fn scaffolded_w5_direct() {
        let (host, t) = w5_host();
        let s = scaffold(&host, &t).unwrap();
        assert_eq!(min_genus(&s.graph, &opts()).unwrap().genus, 2);
    }

    #[test]
    fn m4_matches_cycle_reduction() {
        let (mut g5, t5) = milgram_graph(5).unwrap();
        let (a4, b4) = (g5.vertex_by_label("a4").unwrap(), g5.vertex_by_label("b4").unwrap());
        g5.add_edge(a4, b4).unwrap();
        let reduced = TripleSet::new(t5.triples[..3].to_vec());
        let via_cycle = scaffold(&g5, &reduced).unwrap().graph.smooth();
        let (host, t) = milgram_graph(4).unwrap();
        let direct = scaffold(&host, &t).unwrap().graph;
        assert!(crate::survey::are_isomorphic(&via_cycle, &direct).unwrap());
    }

    #[test]
    fn rejects_other_k() {
        assert!(milgram_graph(3).is_err());
    }
}

use proptest::prelude::*;

use genus_core::embedding::{enumerate_rotation_systems, genus_of_embedding, trace_faces};
use genus_core::genus::{
    chords_overlap, deficiency_of_tree, is_planar, max_genus, min_genus, SolverOptions,
};
use genus_core::graph::{bar_amalgamation, MultiGraph};
use genus_core::scaffold::{gamma_t, scaffold, TripleSet};
use genus_core::survey::{census, generate_cubic, CensusOptions, CubicFilters, DEFAULT_STATE_BUDGET};
use genus_core::{emit_graph6, parse_graph6};

fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = MultiGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_m)
            .prop_map(move |pairs| MultiGraph::from_parts(0..n, &pairs))
    })
}

fn connected_multigraph(max_n: usize, max_extra: usize) -> impl Strategy<Value = MultiGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let tree = prop::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = prop::collection::vec((0..n, 0..n), 0..=max_extra);
        (tree, extra).prop_map(move |(tree, extra)| {
            let mut pairs: Vec<_> = tree
                .iter()
                .enumerate()
                .map(|(i, ix)| (ix.index(i + 1), i + 1))
                .collect();
            pairs.extend(extra);
            MultiGraph::from_parts(0..n, &pairs)
        })
    })
}

fn simple_graph(max_n: usize) -> impl Strategy<Value = MultiGraph> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] {
                        pairs.push((i, j));
                    }
                    k += 1;
                }
            }
            MultiGraph::from_parts(0..n, &pairs)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn betti_is_additive(a in multigraph(6, 9), b in multigraph(6, 9)) {
        let (u, _) = a.disjoint_union(&b);
        prop_assert_eq!(u.betti(), a.betti() + b.betti());
        let j = bar_amalgamation(&a, a.vertices()[0], &b, b.vertices()[0]).unwrap();
        prop_assert_eq!(j.betti(), a.betti() + b.betti());
        j.validate().unwrap();
    }

    #[test]
    fn subdivision_is_undone_by_smoothing(g in multigraph(6, 9), e in any::<prop::sample::Index>(), k in 1usize..4) {
        prop_assume!(g.num_edges() > 0);
        let s = g.subdivide(e.index(g.num_edges()), k).unwrap();
        s.validate().unwrap();
        prop_assert_eq!(s.betti(), g.betti());
        let (a, b) = (s.smooth(), g.smooth());
        a.validate().unwrap();
        prop_assert_eq!((a.num_vertices(), a.num_edges(), a.betti()), (b.num_vertices(), b.num_edges(), b.betti()));
    }

    #[test]
    fn graph6_round_trip(g in simple_graph(62)) {
        let s = emit_graph6(&g).unwrap();
        let back = parse_graph6(s.as_bytes()).unwrap();
        prop_assert_eq!(back.num_vertices(), g.num_vertices());
        let mut a = g.edge_list();
        let mut b = back.edge_list();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(emit_graph6(&back).unwrap(), s);
    }

    #[test]
    fn overlapping_chords_are_nonplanar(len in 6usize..16, picks in prop::collection::vec((0usize..16, 0usize..16), 3..5)) {
        let cycle: Vec<usize> = (0..len).collect();
        let chords: Vec<(usize, usize)> = picks.iter().map(|&(u, v)| (u % len, v % len)).filter(|(u, v)| u != v).collect();
        prop_assume!(chords.len() >= 3);
        let mut g = genus_core::named::cycle(len);
        for &(u, v) in &chords {
            g.add_edge(u, v).unwrap();
        }
        if chords_overlap(&cycle, [chords[0], chords[1], chords[2]]).unwrap() {
            prop_assert!(!is_planar(&g).unwrap());
        }
    }

    #[test]
    fn faces_obey_euler(g in connected_multigraph(6, 6), pick in any::<u64>()) {
        let rots = enumerate_rotation_systems(&g, u128::MAX, false).unwrap();
        let rot = rots.at(u128::from(pick) % rots.total()).unwrap();
        let fd = trace_faces(&g, &rot).unwrap();
        let darts: usize = fd.faces.iter().map(|f| f.len()).sum();
        if g.num_edges() > 0 {
            prop_assert_eq!(darts, 2 * g.num_edges());
        }
        let chi = g.num_vertices() as i64 - g.num_edges() as i64 + fd.face_count as i64;
        prop_assert_eq!(chi, 2 - 2 * fd.genus as i64);

        let best = min_genus(&g, &SolverOptions::default()).unwrap();
        prop_assert!(best.genus <= fd.genus);
        prop_assert_eq!(genus_of_embedding(&g, &best.witness).unwrap(), best.genus);
        prop_assert!(2 * best.genus <= g.betti());
        prop_assert_eq!(genus_of_embedding(&g, &rot.mirrored()).unwrap(), fd.genus);
    }

    #[test]
    fn xuong_certificate_checks_itself(g in connected_multigraph(7, 8)) {
        let cert = max_genus(&g).unwrap();
        prop_assert_eq!(deficiency_of_tree(&g, &cert.tree_edges).unwrap(), cert.deficiency);
        prop_assert_eq!((g.betti() - cert.deficiency) % 2, 0);
        prop_assert!(cert.max_genus <= g.betti() / 2);
        prop_assert!(min_genus(&g, &SolverOptions::default()).unwrap().genus <= cert.max_genus);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn scaffold_genus_equals_chording_genus_plus_one(g in connected_multigraph(4, 2), at in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        prop_assume!(g.num_edges() > 0);
        let mut host = g;
        let mut triple = [0; 3];
        for (slot, ix) in triple.iter_mut().zip(&at) {
            host = host.subdivide(ix.index(host.num_edges()), 1).unwrap();
            *slot = *host.vertices().last().unwrap();
        }
        let t = TripleSet::new(vec![triple]);
        let s = scaffold(&host, &t).unwrap();
        let opts = SolverOptions::default();
        prop_assert_eq!(s.graph.betti(), host.betti() + 4);
        prop_assert_eq!(s.graph.num_vertices(), host.num_vertices() + 5);
        prop_assert_eq!(min_genus(&s.graph, &opts).unwrap().genus, gamma_t(&host, &t, &opts).unwrap().gamma + 1);
    }
}

#[test]
fn census_ignores_input_order() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let graphs = generate_cubic(12, CubicFilters::census(), DEFAULT_STATE_BUDGET).unwrap();
    let opts = CensusOptions::default();
    let base = census(graphs.iter().cloned().enumerate(), 12, "gen", &opts).unwrap();
    let mut shuffled = graphs.clone();
    shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(3));
    let other = census(shuffled.into_iter().enumerate(), 12, "gen", &opts).unwrap();
    assert_eq!(base.without_telemetry(), other.without_telemetry());
}

#[test]
fn generator_output_is_isomorphism_free() {
    let graphs = generate_cubic(12, CubicFilters::default(), DEFAULT_STATE_BUDGET).unwrap();
    let mut forms: Vec<_> = graphs
        .iter()
        .map(|g| genus_core::survey::canonical_form(g).unwrap())
        .collect();
    forms.sort();
    forms.dedup();
    assert_eq!(forms.len(), graphs.len());
}

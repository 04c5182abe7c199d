//! Property tests against brute-force references.

use std::collections::BTreeSet;

use proptest::prelude::*;

use pathgraph::certificate::{verify_certificate, ForbiddenWitness};
use pathgraph::chordal::{build_clique_tree, is_chordal, is_hole, maximal_cliques, verify_clique_tree, Chordality};
use pathgraph::generate::{clique_growth_graph, rng_from_seed, separator_graph, subtree_graph};
use pathgraph::oracle::oracle_decides_path;
use pathgraph::recognizer::{check_separator, classify, g_plus, recognize, Verdict, VerdictKind};
use pathgraph::separation::{build_profile, quotient_profile};
use pathgraph::{parse_edge_list, SimpleGraph, VertexId, VertexSet};

fn graph_from_mask(n: usize, mask: u64) -> SimpleGraph {
    let labels: Vec<VertexId> = (0..n).map(|i| VertexId::new(format!("n{i}"))).collect();
    let mut edges = Vec::new();
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((labels[a].clone(), labels[b].clone()));
            }
            bit += 1;
        }
    }
    SimpleGraph::new(labels, edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, mask)| graph_from_mask(n, mask))
}

fn arb_chordal() -> impl Strategy<Value = SimpleGraph> {
    (any::<u64>(), 2usize..=12, any::<bool>()).prop_map(|(seed, n, growth)| {
        let mut rng = rng_from_seed(seed);
        if growth {
            clique_growth_graph(n, 0.6, &mut rng)
        } else {
            subtree_graph(n, n.div_ceil(2), 3, 0.3, &mut rng)
        }
    })
}

fn brute_maximal_cliques(g: &SimpleGraph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let cliques: Vec<VertexSet> = (1u32..1 << n)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect::<VertexSet>())
        .filter(|s| g.is_clique(s))
        .collect();
    let mut out: Vec<VertexSet> = cliques
        .iter()
        .filter(|s| !cliques.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
        .cloned()
        .collect();
    out.sort();
    out
}

fn brute_has_hole(g: &SimpleGraph) -> bool {
    let n = g.vertex_count();
    (0u32..1 << n).any(|m| {
        let s: VertexSet = (0..n).filter(|&v| m >> v & 1 == 1).collect();
        s.len() >= 4
            && s.iter().all(|&v| g.neighbors(v).intersection(&s).count() == 2)
            && g.induced_subgraph(&s).unwrap().is_connected()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn chordality_matches_hole_search(g in arb_graph(8)) {
        match is_chordal(&g) {
            Chordality::Chordal(_) => prop_assert!(!brute_has_hole(&g)),
            Chordality::Hole(h) => {
                prop_assert!(is_hole(&g, &h));
                prop_assert!(brute_has_hole(&g));
            }
        }
    }

    #[test]
    fn cliques_match_subset_enumeration(g in arb_chordal()) {
        let mut got = maximal_cliques(&g).unwrap().cliques;
        got.sort();
        prop_assert_eq!(got, brute_maximal_cliques(&g));
        prop_assert!(verify_clique_tree(&g, &build_clique_tree(&g).unwrap()).unwrap());
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(9), rename in any::<bool>()) {
        // a vertex literally named "v" must survive the round trip
        let g = if rename {
            let text = g.to_edge_list().replace("n0", "v");
            parse_edge_list(&text).unwrap().0
        } else {
            g
        };
        let (back, warnings) = parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert!(warnings.is_empty());
        prop_assert_eq!(back, g);
    }

    #[test]
    fn recognizer_agrees_with_oracle(g in arb_chordal()) {
        prop_assume!(maximal_cliques(&g).unwrap().len() <= 8);
        let path = oracle_decides_path(&g, 8).unwrap();
        let v = recognize(&g);
        prop_assert_eq!(path, v.kind() == VerdictKind::PathGraph);
        if let Verdict::NotPathGraph(ob) = &v {
            prop_assert!(verify_certificate(&ob.profile, &ob.witness));
            let j = v.to_json(&g);
            let back = ForbiddenWitness::from_json(ob.witness.separator.clone(), &j["certificate"]).unwrap();
            prop_assert_eq!(&back, &ob.witness);
        }
    }

    #[test]
    fn pendants_double_the_graph(g in arb_chordal()) {
        let gp = g_plus(&g);
        prop_assert_eq!(gp.vertex_count(), 2 * g.vertex_count());
        prop_assert_eq!(gp.edge_count(), g.edge_count() + g.vertex_count());
        prop_assert_eq!(classify(&gp), classify(&g));
    }

    #[test]
    fn quotient_is_idempotent(seed in any::<u64>(), q in 2usize..=5, parts in 2usize..=7) {
        let mut rng = rng_from_seed(seed);
        let (g, sep) = separator_graph(q, parts, 3, &mut rng);
        let raw = build_profile(&g, &sep).unwrap();
        let once = quotient_profile(&raw);
        let twice = quotient_profile(&once);
        prop_assert_eq!(once.part_count(), twice.part_count());
        prop_assert_eq!(&once.relations, &twice.relations);
        prop_assert!(once.relations.is_antisymmetric());
        prop_assert!(once.relations.is_transitive());
        let members: BTreeSet<usize> = once.parts.iter().flat_map(|p| p.members.iter().copied()).collect();
        prop_assert_eq!(members, (0..raw.part_count()).collect::<BTreeSet<_>>());
    }

    #[test]
    fn separator_certificates_verify(seed in any::<u64>(), q in 2usize..=6, parts in 2usize..=10) {
        let mut rng = rng_from_seed(seed);
        let (g, sep) = separator_graph(q, parts, 4, &mut rng);
        let raw = build_profile(&g, &sep).unwrap();
        let strong = pathgraph::coloring::strong_coloring_search(&quotient_profile(&raw).relations, 10)
            .unwrap()
            .is_some();
        let checked = check_separator(&raw);
        prop_assert_eq!(strong, checked.is_ok());
        match checked {
            Ok(ev) => prop_assert!(pathgraph::coloring::validate_weak_coloring(
                &ev.profile.relations, &ev.partition, &ev.coloring).is_ok()),
            Err(ob) => prop_assert!(verify_certificate(&ob.profile, &ob.witness)),
        }
    }
}

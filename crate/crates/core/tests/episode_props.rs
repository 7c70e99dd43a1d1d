mod common;

use closed_episodes::oracle::{enumerate_episodes, is_subepisode};
use closed_episodes::{format_episode, parse_episode, Alphabet, Edge, Episode, Label};
use common::{arb_episode, episode};
use proptest::prelude::*;

fn alphabet() -> Alphabet {
    Alphabet::from_symbols(common::SYMBOLS)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3_000))]

    #[test]
    fn canonical_form_ignores_node_order(
        labels in proptest::collection::vec(0usize..3, 1..6),
        mask in any::<u64>(),
        seed in any::<u64>(),
    ) {
        let n = labels.len();
        let order: Vec<usize> = (0..n).collect();
        let g = episode(&labels, &order, mask);
        // Relabel nodes by a rotation and rebuild.
        let shift = (seed as usize) % n;
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let mut permuted = vec![Label::new(0); n];
        for v in 0..n {
            permuted[perm[v]] = g.label(v);
        }
        let edges = g.edges().map(|e| (perm[e.source], perm[e.target]));
        prop_assert_eq!(Episode::canonicalize(&permuted, edges).unwrap(), g);
    }

    #[test]
    fn generated_episodes_are_strict_and_closed(g in arb_episode(6, 3)) {
        prop_assert!(g.is_strict());
        prop_assert!(g.is_transitively_closed());
        prop_assert!(g.is_acyclic());
        prop_assert_eq!(g.transitive_closure(), g.clone());
    }

    #[test]
    fn literal_round_trip(g in arb_episode(6, 4)) {
        let al = alphabet();
        let text = format_episode(&g, &al);
        prop_assert_eq!(parse_episode(&text, &al).unwrap(), g);
    }

    #[test]
    fn skeleton_regenerates_edges(g in arb_episode(6, 3)) {
        let skeleton = g.skeleton_edges();
        let rebuilt = Episode::canonicalize(g.labels(), skeleton.iter().copied()).unwrap().transitive_closure();
        prop_assert_eq!(rebuilt, g.clone());
        for e in g.proper_skeleton_edges() {
            prop_assert!(g.label(e.source) != g.label(e.target));
            let h = g.without_edge(e).unwrap();
            prop_assert!(h.is_transitively_closed());
            prop_assert!(h.is_strict());
            prop_assert_eq!(h.with_edge(e).unwrap(), g.clone());
        }
    }

    #[test]
    fn subepisode_matches_brute_force(g in arb_episode(4, 3), h in arb_episode(5, 3)) {
        prop_assert_eq!(g.is_subepisode_of(&h), is_subepisode(&g, &h));
    }

    #[test]
    fn node_removal_gives_sub_episode(g in arb_episode(6, 3), v in 0usize..6) {
        let v = v % g.node_count();
        let h = g.without_node(v).unwrap();
        prop_assert!(h.is_strict() && h.is_transitively_closed());
        prop_assert!(h.is_subepisode_of(&g));
        prop_assert!(!g.is_subepisode_of(&h));
    }

    #[test]
    fn induced_subgraphs_are_sub_episodes(g in arb_episode(6, 3), keep in any::<u64>()) {
        let h = g.induced(keep & g.all_nodes());
        prop_assert!(h.is_subepisode_of(&g));
        prop_assert!(h.is_transitively_closed());
    }

    #[test]
    fn embedding_maps_edges(g in arb_episode(4, 3), h in arb_episode(5, 3)) {
        if let Some(map) = g.embedding_into(&h) {
            for e in g.edges() {
                prop_assert!(h.has_edge(Edge::new(map[e.source], map[e.target])));
            }
        } else {
            prop_assert!(!is_subepisode(&g, &h));
        }
    }
}

#[test]
fn subepisode_is_a_partial_order_on_canonical_forms() {
    let labels: Vec<Label> = (0..3).map(Label::new).collect();
    let universe = enumerate_episodes(&labels, 3).unwrap().episodes;
    let n = universe.len();
    let below: Vec<Vec<bool>> = universe
        .iter()
        .map(|g| universe.iter().map(|h| g.is_subepisode_of(h)).collect())
        .collect();
    for i in 0..n {
        assert!(below[i][i]);
        for j in 0..n {
            if i != j {
                assert!(
                    !(below[i][j] && below[j][i]),
                    "{:?} {:?}",
                    universe[i],
                    universe[j]
                );
            }
            for k in 0..n {
                if below[i][j] && below[j][k] {
                    assert!(below[i][k]);
                }
            }
        }
    }
}

#[test]
fn edits_reject_invalid_results() {
    let l: Vec<Label> = (0..2).map(Label::new).collect();
    let ab = Episode::serial(&l);
    assert!(ab.with_edge(Edge::new(1, 0)).is_err());
    assert!(ab.without_edge(Edge::new(1, 0)).is_err());
    assert!(Episode::parallel(&[l[0], l[0]])
        .without_edge(Edge::new(0, 1))
        .is_err());
    assert!(ab.without_node(5).is_err());
}

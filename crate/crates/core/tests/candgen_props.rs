use std::collections::{BTreeMap, HashSet};

use closed_episodes::candgen::{
    addition_keeps_closure, generate_edge_candidates, generate_node_candidates,
};
use closed_episodes::oracle::enumerate_episodes;
use closed_episodes::{Edge, Episode, EpisodeRecord, Label};

fn record(g: &Episode) -> EpisodeRecord {
    EpisodeRecord {
        episode: g.clone(),
        closure: g.clone(),
        freq_fixed: 1,
        freq_disjoint: 1,
        minimal_windows: Vec::new(),
    }
}

fn levels(max_nodes: usize) -> BTreeMap<(usize, usize), Vec<Episode>> {
    let labels: Vec<Label> = (0..3).map(Label::new).collect();
    let mut out: BTreeMap<(usize, usize), Vec<Episode>> = BTreeMap::new();
    for g in enumerate_episodes(&labels, max_nodes).unwrap().episodes {
        out.entry((g.node_count(), g.edge_count()))
            .or_default()
            .push(g);
    }
    out
}

/// With every episode of a level present and trivial closures, the next level
/// comes out exactly: all episodes that have a proper skeleton edge.
#[test]
fn full_levels_generate_the_next_level() {
    let all = levels(4);
    for (&(n, m), members) in &all {
        let records: Vec<EpisodeRecord> = members.iter().map(record).collect();
        let refs: Vec<&EpisodeRecord> = records.iter().collect();
        let generated = generate_edge_candidates(&refs);
        let unique: HashSet<&Episode> = generated.iter().collect();
        assert_eq!(unique.len(), generated.len(), "duplicates at ({n},{m})");
        for c in &generated {
            assert!(c.is_strict() && c.is_transitively_closed());
            assert_eq!((c.node_count(), c.edge_count()), (n, m + 1));
        }
        let want: HashSet<&Episode> = all
            .get(&(n, m + 1))
            .map(|v| {
                v.iter()
                    .filter(|g| !g.proper_skeleton_edges().is_empty())
                    .collect()
            })
            .unwrap_or_default();
        assert_eq!(unique, want, "level ({n},{m})");
    }
}

#[test]
fn node_candidates_from_full_parallel_level() {
    let labels: Vec<Label> = (0..3).map(Label::new).collect();
    let universe = enumerate_episodes(&labels, 4).unwrap().episodes;
    for n in 1..4 {
        let parallel: Vec<&Episode> = universe
            .iter()
            .filter(|g| g.node_count() == n && g.is_parallel())
            .collect();
        let got: HashSet<Episode> = generate_node_candidates(&parallel).into_iter().collect();
        let want: HashSet<Episode> = universe
            .iter()
            .filter(|g| g.node_count() == n + 1 && g.is_parallel())
            .cloned()
            .collect();
        assert_eq!(got, want, "n = {n}");
    }
}

#[test]
fn closure_keeping_additions_match_transitive_closure() {
    let all = levels(4);
    for g in all.values().flatten() {
        for x in 0..g.node_count() {
            for y in 0..g.node_count() {
                let e = Edge::new(x, y);
                if x == y || g.has_edge(e) || g.has_edge(e.reversed()) {
                    continue;
                }
                let Ok(h) = g.with_edge(e) else { continue };
                assert_eq!(
                    addition_keeps_closure(g, e),
                    h.is_transitively_closed(),
                    "{g:?} + {e:?}"
                );
            }
        }
    }
}

//! Level-wise candidate generation that only ever produces strict,
//! transitively closed episodes.
//!
//! A level holds the surviving episodes with `N` nodes and `M` edges.
//! Candidates with `M + 1` edges come from three sources:
//!
//! * parallel members get one proper edge wherever that keeps the closure;
//! * Case A joins two members that differ in a single edge, where the extra
//!   edge of the partner sorts after the last proper skeleton edge `e1` of
//!   the first member, and `e1` stays a skeleton edge;
//! * Case B adds an edge that turns `e1` into a non-skeleton edge.
//!
//! Every candidate `H` has a unique parent `H - last(H)`, so the three
//! sources never overlap.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::episode::{Edge, Episode};
use crate::label::Label;
use crate::store::EpisodeRecord;

/// Adding `e` to a transitively closed `g` stays closed iff `e.source`
/// already reaches every child of `e.target` and every parent of
/// `e.source` already reaches `e.target`. Assumes `g + e` is acyclic.
pub fn addition_keeps_closure(g: &Episode, e: Edge) -> bool {
    let children = g.successors(e.target);
    let parents = g.predecessors(e.source);
    let reaches_children = children & !g.successors(e.source) & !(1u64 << e.source) == 0;
    let parents_reach = parents & !g.predecessors(e.target) == 0;
    reaches_children && parents_reach
}

/// Maps an edge of `g` onto its stored closure.
fn in_closure(g: &Episode, closure: &Episode, e: Edge) -> bool {
    let emb = g
        .embedding_into(closure)
        .expect("a closure contains the nodes of its episode");
    closure.has_edge(Edge::new(emb[e.source], emb[e.target]))
}

/// Case A join. Returns `g1 + e2` when the pair qualifies and the result is
/// acyclic and transitively closed, `None` otherwise.
pub fn join_case_a(g1: &Episode, g2: &Episode) -> Option<Episode> {
    if g1.labels() != g2.labels() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let e1 = g1.last_proper_skeleton_edge()?;
    let only_g1: Vec<Edge> = g1.edges().filter(|e| !g2.has_edge(*e)).collect();
    let only_g2: Vec<Edge> = g2.edges().filter(|e| !g1.has_edge(*e)).collect();
    if only_g1 != [e1] || only_g2.len() != 1 {
        return None;
    }
    let e2 = only_g2[0];
    if e2 <= e1 {
        return None;
    }
    join_edges(g1, e1, e2)
}

fn join_edges(g1: &Episode, e1: Edge, e2: Edge) -> Option<Episode> {
    let (x1, y1) = (e1.source, e1.target);
    let (x2, y2) = (e2.source, e2.target);
    if g1.has_edge(e2.reversed()) {
        return None;
    }
    let ok = (x1 != y2 && x2 != y1)
        || (x1 != y2 && x2 == y1 && g1.has_edge(Edge::new(x1, y2)))
        || (x1 == y2 && x2 != y1 && g1.has_edge(Edge::new(x2, y1)));
    if !ok {
        return None;
    }
    let h = g1.with_edge(e2).ok()?;
    debug_assert!(
        h.is_transitively_closed(),
        "join produced a non-closed episode"
    );
    Some(h)
}

/// Case B extensions of `g1`, pruned by its stored closure.
pub fn extend_case_b(g1: &Episode, closure: &Episode) -> Vec<Episode> {
    let Some(e1) = g1.last_proper_skeleton_edge() else {
        return Vec::new();
    };
    let (x1, y1) = (e1.source, e1.target);
    let skeleton = g1.skeleton_edges();
    let proposals = skeleton
        .iter()
        .filter(|f| f.source == x1 && f.target != y1)
        .map(|f| Edge::new(f.target, y1))
        .chain(
            skeleton
                .iter()
                .filter(|f| f.target == y1 && f.source != x1)
                .map(|f| Edge::new(x1, f.source)),
        );
    let mut out = Vec::new();
    for e2 in proposals {
        if g1.has_edge(e2) || g1.has_edge(e2.reversed()) || in_closure(g1, closure, e2) {
            continue;
        }
        if !addition_keeps_closure(g1, e2) {
            continue;
        }
        let Ok(h) = g1.with_edge(e2) else { continue };
        if h.last_proper_skeleton_edge() != Some(e2) {
            continue;
        }
        debug_assert!(h.is_transitively_closed());
        debug_assert!(!h.skeleton_edges().contains(&e1));
        out.push(h);
    }
    out
}

/// Single proper edges added to an episode without proper edges.
pub fn extend_parallel(g: &Episode) -> Vec<Episode> {
    let n = g.node_count();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if g.label(x) == g.label(y) {
                continue;
            }
            let e = Edge::new(x, y);
            if addition_keeps_closure(g, e) {
                if let Ok(h) = g.with_edge(e) {
                    out.push(h);
                }
            }
        }
    }
    out
}

type JoinKey = (Vec<Label>, Vec<u64>);

fn rows_without(g: &Episode, e: Edge) -> Vec<u64> {
    let mut rows = g.rows().to_vec();
    rows[e.source] &= !(1u64 << e.target);
    rows
}

/// All candidates with one more edge than the members of `level`.
pub fn generate_edge_candidates(level: &[&EpisodeRecord]) -> Vec<Episode> {
    // Partners indexed by (labels, edges minus one proper edge).
    let mut partners: HashMap<JoinKey, Vec<Edge>> = HashMap::new();
    for r in level {
        let g = &r.episode;
        for e in g.edges().filter(|e| g.label(e.source) != g.label(e.target)) {
            partners
                .entry((g.labels().to_vec(), rows_without(g, e)))
                .or_default()
                .push(e);
        }
    }

    let per_member: Vec<Vec<Episode>> = level
        .par_iter()
        .map(|r| {
            let g1 = &r.episode;
            let Some(e1) = g1.last_proper_skeleton_edge() else {
                return extend_parallel(g1);
            };
            let mut out = Vec::new();
            let key = (g1.labels().to_vec(), rows_without(g1, e1));
            if let Some(extra) = partners.get(&key) {
                for &e2 in extra {
                    if e2 <= e1 || in_closure(g1, &r.closure, e2) {
                        continue;
                    }
                    if let Some(h) = join_edges(g1, e1, e2) {
                        out.push(h);
                    }
                }
            }
            out.extend(extend_case_b(g1, &r.closure));
            out
        })
        .collect();
    let out: Vec<Episode> = per_member.into_iter().flatten().collect();
    debug_assert!(
        {
            let mut seen = std::collections::HashSet::new();
            out.iter().all(|h| seen.insert(h))
        },
        "candidate generation produced a duplicate"
    );
    out
}

/// Parallel candidates with one more node: prefix joins of sorted label
/// lists, plus each member with its last label repeated.
pub fn generate_node_candidates(parallel_level: &[&Episode]) -> Vec<Episode> {
    let mut by_prefix: HashMap<&[Label], Vec<Label>> = HashMap::new();
    for g in parallel_level {
        if let Some((&last, prefix)) = g.labels().split_last() {
            by_prefix.entry(prefix).or_default().push(last);
        }
    }
    let mut out = Vec::new();
    for g in parallel_level {
        let Some((&last, prefix)) = g.labels().split_last() else {
            continue;
        };
        let mut labels = g.labels().to_vec();
        for &other in by_prefix.get(prefix).into_iter().flatten() {
            if other > last {
                labels.push(other);
                out.push(Episode::parallel(&labels));
                labels.pop();
            }
        }
        labels.push(last);
        out.push(Episode::parallel(&labels));
    }
    out
}

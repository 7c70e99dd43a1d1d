//! The mining pipeline: level-wise discovery of closure generators, patching
//! with intermediate episodes, and the final frequency-closed filter.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::candgen::{generate_edge_candidates, generate_node_candidates};
use crate::closure::{ClosureContext, ClosureMode};
use crate::episode::{Edge, Episode};
use crate::label::Label;
use crate::scanner::{disjoint_frequency, fixed_frequency, Measure};
use crate::sequence::EventSequence;
use crate::store::{EpisodeRecord, EpisodeStore};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MiningError {
    #[error("invalid configuration: {0}")]
    Config(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiningConfig {
    /// Maximal window width ρ.
    pub window: usize,
    /// Frequency threshold σ, as a count.
    pub min_freq: usize,
    pub measure: Measure,
    /// Episodes with more nodes are neither generated nor reported.
    pub max_nodes: Option<usize>,
    pub closure: ClosureMode,
    /// Disable only to observe what the intermediate episodes contribute.
    pub add_intermediate: bool,
}

impl MiningConfig {
    pub fn new(window: usize, min_freq: usize) -> Self {
        MiningConfig {
            window,
            min_freq,
            measure: Measure::Fixed,
            max_nodes: None,
            closure: ClosureMode::Instance,
            add_intermediate: true,
        }
    }

    pub fn measure(mut self, measure: Measure) -> Self {
        self.measure = measure;
        self
    }

    pub fn max_nodes(mut self, max_nodes: Option<usize>) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn closure(mut self, closure: ClosureMode) -> Self {
        self.closure = closure;
        self
    }

    pub fn validate(&self) -> Result<(), MiningError> {
        if self.window < 1 {
            return Err(MiningError::Config("window must be at least 1".into()));
        }
        if self.min_freq < 1 {
            return Err(MiningError::Config(
                "frequency threshold must be at least 1".into(),
            ));
        }
        if self.max_nodes == Some(0) {
            return Err(MiningError::Config("max nodes must be at least 1".into()));
        }
        Ok(())
    }

    fn within_cap(&self, g: &Episode) -> bool {
        self.max_nodes.is_none_or(|k| g.node_count() <= k)
    }
}

/// Everything a run produces.
#[derive(Clone, Debug, Default)]
pub struct MiningOutput {
    /// Number of episodes discovered (generators plus intermediates).
    pub discovered: usize,
    /// Distinct closures of the discovered episodes, sorted.
    pub closed: Vec<EpisodeRecord>,
    /// The frequency-closed subset of `closed`, sorted.
    pub f_closed: Vec<EpisodeRecord>,
    /// Time spent on each node level of the search, by node count.
    pub level_times: Vec<(usize, Duration)>,
}

/// Mines the frequent frequency-closed episodes of `seq`.
pub fn mine(seq: &EventSequence, config: &MiningConfig) -> Result<Vec<EpisodeRecord>, MiningError> {
    Ok(mine_detailed(seq, config)?.f_closed)
}

pub fn mine_detailed(
    seq: &EventSequence,
    config: &MiningConfig,
) -> Result<MiningOutput, MiningError> {
    config.validate()?;
    let miner = Miner {
        ctx: ClosureContext::new(seq, config.window),
        config,
    };
    let mut level_times = Vec::new();
    let store = miner.discover(&mut level_times);
    let closed = miner.closed_records(&store);
    let f_closed = f_closure_filter(closed.clone(), config.measure);
    Ok(MiningOutput {
        discovered: store.len(),
        closed,
        f_closed,
        level_times,
    })
}

struct Miner<'a> {
    ctx: ClosureContext<'a>,
    config: &'a MiningConfig,
}

impl Miner<'_> {
    /// Record with frequencies and closure, or `None` when infrequent.
    fn evaluate(&self, g: &Episode) -> Option<EpisodeRecord> {
        let windows = self.ctx.minimal_windows(g);
        let freq_fixed = fixed_frequency(&windows, self.config.window);
        let freq_disjoint = disjoint_frequency(&windows);
        let freq = match self.config.measure {
            Measure::Fixed => freq_fixed,
            Measure::Disjoint => freq_disjoint,
        };
        if freq < self.config.min_freq {
            return None;
        }
        let closure = match self.config.closure {
            ClosureMode::Instance => {
                let with_nodes = self.ctx.node_closure_from_windows(g, &windows);
                self.ctx.edge_closure(&with_nodes)
            }
            ClosureMode::Edge => self.ctx.edge_closure(g),
        };
        Some(EpisodeRecord {
            episode: g.clone(),
            closure,
            freq_fixed,
            freq_disjoint,
            minimal_windows: windows,
        })
    }

    fn process(&self, candidates: &[Episode], store: &mut EpisodeStore) {
        let results: Vec<(EpisodeRecord, Vec<EpisodeRecord>)> = candidates
            .par_iter()
            .filter(|g| !store.contains(g) && test_candidate(g, store))
            .filter_map(|g| {
                let record = self.evaluate(g)?;
                let extra = if self.config.add_intermediate {
                    add_intermediate(g, &record.closure)
                        .into_iter()
                        .filter(|h| self.config.within_cap(h) && !store.contains(h))
                        .filter_map(|h| self.evaluate(&h))
                        .collect()
                } else {
                    Vec::new()
                };
                Some((record, extra))
            })
            .collect();
        for (record, extra) in results {
            store.insert(record);
            for r in extra {
                store.insert(r);
            }
        }
    }

    fn discover(&self, level_times: &mut Vec<(usize, Duration)>) -> EpisodeStore {
        let mut store = EpisodeStore::new();
        let mut candidates: Vec<Episode> = self
            .ctx
            .sequence
            .present_labels()
            .map(|l| Episode::parallel(&[l]))
            .collect();
        let mut nodes = 1;
        loop {
            candidates.retain(|g| self.config.within_cap(g));
            if candidates.is_empty() && !store.has_at_least_nodes(nodes) {
                break;
            }
            if self.config.max_nodes.is_some_and(|k| nodes > k) {
                break;
            }
            let started = Instant::now();
            let mut edges = 0;
            loop {
                if candidates.is_empty() && !store.has_at_least_edges(nodes, edges) {
                    break;
                }
                self.process(&candidates, &mut store);
                candidates = generate_edge_candidates(&store.level(nodes, edges));
                edges += 1;
            }
            let parallel: Vec<&Episode> = store
                .parallel(nodes)
                .into_iter()
                .map(|r| &r.episode)
                .collect();
            candidates = generate_node_candidates(&parallel);
            level_times.push((nodes, started.elapsed()));
            nodes += 1;
        }
        store
    }

    /// Distinct closures of all discovered episodes. Under a node cap, a
    /// closure that outgrew the cap is replaced by its restrictions to
    /// exactly `max_nodes` nodes that still contain the generator.
    fn closed_records(&self, store: &EpisodeStore) -> Vec<EpisodeRecord> {
        let mut out: HashMap<Episode, EpisodeRecord> = HashMap::new();
        let mut push = |episode: Episode, r: &EpisodeRecord| {
            out.entry(episode.clone()).or_insert_with(|| EpisodeRecord {
                closure: episode.clone(),
                episode,
                freq_fixed: r.freq_fixed,
                freq_disjoint: r.freq_disjoint,
                minimal_windows: r.minimal_windows.clone(),
            });
        };
        for r in store.records() {
            let closure = &r.closure;
            match self.config.max_nodes {
                Some(k) if closure.node_count() > k => {
                    let emb = r
                        .episode
                        .embedding_into(closure)
                        .expect("closure extends its episode");
                    let base: u64 = emb.iter().fold(0, |acc, &v| acc | (1 << v));
                    let extra: Vec<usize> = (0..closure.node_count())
                        .filter(|v| base & (1 << v) == 0)
                        .collect();
                    let need = k - r.episode.node_count();
                    for_each_subset(&extra, need, &mut |mask| {
                        push(closure.induced(base | mask), r);
                    });
                }
                _ => push(closure.clone(), r),
            }
        }
        let mut records: Vec<EpisodeRecord> = out.into_values().collect();
        records.sort_by(|a, b| a.episode.cmp(&b.episode));
        records
    }
}

fn for_each_subset(items: &[usize], size: usize, f: &mut dyn FnMut(u64)) {
    fn rec(items: &[usize], size: usize, mask: u64, f: &mut dyn FnMut(u64)) {
        if size == 0 {
            f(mask);
            return;
        }
        for (i, &v) in items.iter().enumerate() {
            if items.len() - i < size {
                break;
            }
            rec(&items[i + 1..], size - 1, mask | (1 << v), f);
        }
    }
    rec(items, size, 0, f)
}

/// Level-wise pruning: every sub-episode obtained by dropping a proper
/// skeleton edge, or a node without one, must be stored, and must not already
/// be extended by its own closure to the removed part.
pub fn test_candidate(g: &Episode, store: &EpisodeStore) -> bool {
    let proper = g.proper_skeleton_edges();
    let mut touched = 0u64;
    for &e in &proper {
        touched |= (1 << e.source) | (1 << e.target);
        let sub = g
            .without_edge(e)
            .expect("removing a proper skeleton edge keeps strictness");
        let Some(rec) = store.get(&sub) else {
            return false;
        };
        let emb = sub
            .embedding_into(&rec.closure)
            .expect("closure extends its episode");
        if rec
            .closure
            .has_edge(Edge::new(emb[e.source], emb[e.target]))
        {
            return false;
        }
    }
    for v in 0..g.node_count() {
        if touched & (1 << v) != 0 {
            continue;
        }
        let sub = g
            .without_node(v)
            .expect("node removal keeps a closed episode strict");
        if sub.is_empty() {
            continue;
        }
        let Some(rec) = store.get(&sub) else {
            return false;
        };
        if g.is_solitary(v) && rec.closure.labels().contains(&g.label(v)) {
            return false;
        }
    }
    true
}

/// Episodes between `g` and its closure that later levels may need as
/// parents: each new closure node on its own, each new node with the edges a
/// single edge would force, pairs of new nodes, and edge sets inside `g`
/// forced by a single edge.
pub fn add_intermediate(g: &Episode, closure: &Episode) -> Vec<Episode> {
    let mut out: Vec<Episode> = Vec::new();
    let emb = g
        .embedding_into(closure)
        .expect("closure extends its episode");
    let covered: u64 = emb.iter().fold(0, |acc, &v| acc | (1 << v));
    let new_nodes: Vec<usize> = (0..closure.node_count())
        .filter(|v| covered & (1 << v) == 0)
        .collect();

    for &x in &new_nodes {
        let label = closure.label(x);
        let h = g.with_node(label).expect("closure adds only unseen labels");
        out.push(h.clone());
        let xh = h
            .labels()
            .iter()
            .position(|&l| l == label)
            .expect("node just added");
        for y in (0..h.node_count()).filter(|&y| y != xh) {
            for e in [Edge::new(xh, y), Edge::new(y, xh)] {
                if let Some(p) = forced_edges(&h, closure, e) {
                    out.push(p);
                }
            }
        }
    }

    for &x in &new_nodes {
        for &y in &new_nodes {
            if x != y && !closure.has_edge(Edge::new(x, y)) {
                let h = g
                    .with_node(closure.label(x))
                    .and_then(|h| h.with_node(closure.label(y)))
                    .expect("closure adds only unseen labels");
                out.push(h);
            }
        }
    }

    for x in 0..g.node_count() {
        for y in 0..g.node_count() {
            if x != y && g.label(x) != g.label(y) {
                if let Some(p) = forced_edges(g, closure, Edge::new(x, y)) {
                    out.push(p);
                }
            }
        }
    }

    out.sort();
    out.dedup();
    out
}

/// With `e ∉ closure`, the edges `Z` that closing `h + e` would add; returns
/// `h + Z` when `Z` is non-empty, lies inside the closure, and `h + Z` is
/// transitively closed.
fn forced_edges(h: &Episode, closure: &Episode, e: Edge) -> Option<Episode> {
    if h.has_edge(e) || h.has_edge(e.reversed()) {
        return None;
    }
    let emb = h.embedding_into(closure)?;
    let map = |e: Edge| Edge::new(emb[e.source], emb[e.target]);
    if closure.has_edge(map(e)) {
        return None;
    }
    let with_e = h.with_edge(e).ok()?;
    let closed = with_e.transitive_closure();
    let forced: Vec<Edge> = closed.edges().filter(|z| !with_e.has_edge(*z)).collect();
    if forced.is_empty() || !forced.iter().all(|z| closure.has_edge(map(*z))) {
        return None;
    }
    let p = h.with_edges(forced).ok()?;
    p.is_transitively_closed().then_some(p)
}

/// Drops every record that has a strict super-episode with the same
/// frequency among the records: same-node pairs by edge inclusion, and
/// smaller episodes through every node-subset removal of each record.
pub fn f_closure_filter(records: Vec<EpisodeRecord>, measure: Measure) -> Vec<EpisodeRecord> {
    let mut by_labels: HashMap<&[Label], Vec<usize>> = HashMap::new();
    for (i, r) in records.iter().enumerate() {
        by_labels.entry(r.episode.labels()).or_default().push(i);
    }
    let marks: Vec<Vec<usize>> = records
        .par_iter()
        .enumerate()
        .map(|(i, r)| {
            let g = &r.episode;
            let freq = r.frequency(measure);
            let mut marked = Vec::new();
            for &j in &by_labels[g.labels()] {
                let h = &records[j];
                if j != i
                    && h.frequency(measure) == freq
                    && h.episode.edge_count() < g.edge_count()
                    && h.episode.is_subepisode_of(g)
                {
                    marked.push(j);
                }
            }
            let all = g.all_nodes();
            let mut removed = 1u64;
            while removed < all {
                let f = g.induced(all & !removed);
                if let Some(ids) = by_labels.get(f.labels()) {
                    for &j in ids {
                        let h = &records[j];
                        if h.frequency(measure) == freq && h.episode.is_subepisode_of(&f) {
                            marked.push(j);
                        }
                    }
                }
                removed += 1;
            }
            marked
        })
        .collect();
    let mut keep = vec![true; records.len()];
    for j in marks.into_iter().flatten() {
        keep[j] = false;
    }
    records
        .into_iter()
        .zip(keep)
        .filter_map(|(r, k)| k.then_some(r))
        .collect()
}

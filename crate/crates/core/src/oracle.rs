//! Brute-force reference implementations.
//!
//! Everything here is written from the definitions and shares only the
//! `Label` and `Episode` types with the rest of the crate: coverage is
//! exhaustive backtracking, sub-episodes are found by trying every injective
//! label-respecting map, and episodes are enumerated as all orientations of
//! all node pairs.

#![allow(clippy::needless_range_loop)]

use std::collections::HashSet;

use thiserror::Error;

use crate::episode::{Edge, Episode};
use crate::label::Label;
use crate::miner::MiningConfig;
use crate::scanner::Measure;
use crate::sequence::{EventSequence, Interval};

pub const MAX_ORACLE_NODES: usize = 5;
pub const MAX_ORACLE_LENGTH: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BudgetError {
    #[error("oracle limited to {MAX_ORACLE_NODES} nodes, asked for {0}")]
    Nodes(usize),
    #[error("oracle limited to sequences of length {MAX_ORACLE_LENGTH}, got {0}")]
    Length(usize),
}

fn check_nodes(n: usize) -> Result<(), BudgetError> {
    if n > MAX_ORACLE_NODES {
        Err(BudgetError::Nodes(n))
    } else {
        Ok(())
    }
}

fn check_length(seq: &EventSequence) -> Result<(), BudgetError> {
    if seq.len() > MAX_ORACLE_LENGTH {
        Err(BudgetError::Length(seq.len()))
    } else {
        Ok(())
    }
}

/// Every strict, transitively closed episode up to a node bound.
#[derive(Clone, Debug)]
pub struct EpisodeUniverse {
    pub alphabet: Vec<Label>,
    pub max_nodes: usize,
    pub episodes: Vec<Episode>,
}

impl EpisodeUniverse {
    pub fn len(&self) -> usize {
        self.episodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.episodes.is_empty()
    }
}

/// `adj[i][j]` holds when `i → j`.
type Matrix = Vec<Vec<bool>>;

fn closed_and_acyclic(adj: &Matrix) -> bool {
    let n = adj.len();
    for i in 0..n {
        for j in 0..n {
            if !adj[i][j] {
                continue;
            }
            if adj[j][i] {
                return false;
            }
            for k in 0..n {
                if adj[j][k] && !adj[i][k] {
                    return false;
                }
            }
        }
    }
    true
}

fn multisets(
    alphabet: &[Label],
    size: usize,
    from: usize,
    cur: &mut Vec<Label>,
    out: &mut Vec<Vec<Label>>,
) {
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    for i in from..alphabet.len() {
        cur.push(alphabet[i]);
        multisets(alphabet, size, i, cur, out);
        cur.pop();
    }
}

/// Episodes over one label list: each unordered pair is unrelated or ordered
/// either way, equal labels must be ordered, and only transitively closed
/// acyclic choices survive.
fn orders_over(labels: &[Label], out: &mut HashSet<Episode>) {
    let n = labels.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    'choice: for code in 0..total {
        let mut adj = vec![vec![false; n]; n];
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                0 if labels[i] == labels[j] => continue 'choice,
                0 => {}
                1 => adj[i][j] = true,
                _ => adj[j][i] = true,
            }
            c /= 3;
        }
        if !closed_and_acyclic(&adj) {
            continue;
        }
        let edges = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| adj[i][j]);
        let g = Episode::canonicalize(labels, edges).expect("strict closed orientation");
        out.insert(g);
    }
}

/// All canonical strict transitively closed episodes with 1..=`max_nodes`
/// nodes over labels from `alphabet`, sorted.
pub fn enumerate_episodes(
    alphabet: &[Label],
    max_nodes: usize,
) -> Result<EpisodeUniverse, BudgetError> {
    check_nodes(max_nodes)?;
    let mut sorted = alphabet.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut set = HashSet::new();
    for size in 1..=max_nodes {
        let mut lists = Vec::new();
        multisets(&sorted, size, 0, &mut Vec::new(), &mut lists);
        for labels in lists {
            orders_over(&labels, &mut set);
        }
    }
    let mut episodes: Vec<Episode> = set.into_iter().collect();
    episodes.sort();
    Ok(EpisodeUniverse {
        alphabet: sorted,
        max_nodes,
        episodes,
    })
}

/// `g ⪯ h` by trying every injective label-preserving map.
pub fn is_subepisode(g: &Episode, h: &Episode) -> bool {
    fn extend(g: &Episode, h: &Episode, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == g.node_count() {
            return g
                .edges()
                .all(|e| h.has_edge(Edge::new(map[e.source], map[e.target])));
        }
        for w in 0..h.node_count() {
            if !used[w] && h.label(w) == g.label(v) {
                used[w] = true;
                map.push(w);
                if extend(g, h, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    g.node_count() <= h.node_count()
        && extend(g, h, &mut Vec::new(), &mut vec![false; h.node_count()])
}

/// `g ≺ h`.
pub fn is_strict_subepisode(g: &Episode, h: &Episode) -> bool {
    is_subepisode(g, h) && !is_subepisode(h, g)
}

/// Number of non-empty strict closed episodes below the serial episode on
/// `n` distinct labels, as the sum over label subsets of the closed edge
/// subsets of the induced total order.
pub fn count_serial_subepisodes(n: usize) -> u64 {
    (1..=n).map(|k| binomial(n, k) * closed_suborders(k)).sum()
}

/// Same count by enumerating every episode over `n` labels and keeping those
/// below the serial episode.
pub fn count_serial_subepisodes_by_enumeration(n: usize) -> Result<u64, BudgetError> {
    let labels: Vec<Label> = (0..n as u32).map(Label::new).collect();
    let universe = enumerate_episodes(&labels, n)?;
    let serial = Episode::serial(&labels);
    Ok(universe
        .episodes
        .iter()
        .filter(|g| is_subepisode(g, &serial))
        .count() as u64)
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Transitively closed subsets of the edges of a total order on `k` nodes.
fn closed_suborders(k: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| ((i + 1)..k).map(move |j| (i, j)))
        .collect();
    let mut count = 0;
    for mask in 0u64..(1 << pairs.len()) {
        let mut adj = vec![vec![false; k]; k];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            adj[i][j] = mask & (1 << b) != 0;
        }
        if closed_and_acyclic(&adj) {
            count += 1;
        }
    }
    count
}

/// Does `seq[a..=b]` (1-based, clamped) cover `g`?
pub fn naive_covers(g: &Episode, seq: &EventSequence, a: i64, b: i64) -> bool {
    let a = a.max(1) as usize;
    let b = (b.min(seq.len() as i64)).max(0) as usize;
    if g.is_empty() {
        return true;
    }
    if a > b {
        return false;
    }
    let events = &seq.events()[a - 1..b];
    fn place(g: &Episode, events: &[Label], pos: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = pos.len();
        if v == g.node_count() {
            return true;
        }
        for p in 0..events.len() {
            if used[p] || events[p] != g.label(v) {
                continue;
            }
            let ok = (0..v).all(|u| {
                (!g.has_edge(Edge::new(u, v)) || pos[u] < p)
                    && (!g.has_edge(Edge::new(v, u)) || p < pos[u])
            });
            if ok {
                used[p] = true;
                pos.push(p);
                if place(g, events, pos, used) {
                    return true;
                }
                pos.pop();
                used[p] = false;
            }
        }
        false
    }
    place(g, events, &mut Vec::new(), &mut vec![false; events.len()])
}

/// Minimal windows of width at most `window`, plus both frequencies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveScan {
    pub minimal_windows: Vec<Interval>,
    pub freq_fixed: usize,
    pub freq_disjoint: usize,
}

impl NaiveScan {
    pub fn frequency(&self, measure: Measure) -> usize {
        match measure {
            Measure::Fixed => self.freq_fixed,
            Measure::Disjoint => self.freq_disjoint,
        }
    }
}

pub fn naive_scan(
    g: &Episode,
    seq: &EventSequence,
    window: usize,
) -> Result<NaiveScan, BudgetError> {
    check_nodes(g.node_count())?;
    check_length(seq)?;
    assert!(window >= 1, "window must be positive");
    let len = seq.len();
    let rho = window as i64;
    // covers[a][b] for 1 ≤ a ≤ b ≤ len and b - a < window.
    let mut covers = vec![vec![false; len + 2]; len + 2];
    for a in 1..=len {
        for b in a..=len.min(a + window - 1) {
            covers[a][b] = naive_covers(g, seq, a as i64, b as i64);
        }
    }
    let mut minimal_windows = Vec::new();
    for a in 1..=len {
        for b in a..=len.min(a + window - 1) {
            if covers[a][b] && !covers[a + 1][b] && !covers[a][b - 1] {
                minimal_windows.push(Interval::new(a, b));
            }
        }
    }
    let freq_fixed = if g.is_empty() || len == 0 {
        0
    } else {
        (2 - rho..=len as i64)
            .filter(|&a| naive_covers(g, seq, a, a + rho - 1))
            .count()
    };
    // best[b]: most disjoint covering windows inside s[1..=b].
    let mut best = vec![0usize; len + 1];
    for b in 1..=len {
        best[b] = best[b - 1];
        for a in b.saturating_sub(window - 1).max(1)..=b {
            if covers[a][b] {
                best[b] = best[b].max(best[a - 1] + 1);
            }
        }
    }
    Ok(NaiveScan {
        minimal_windows,
        freq_fixed,
        freq_disjoint: best[len],
    })
}

/// Frequent episodes of `universe` with no strict super-episode of equal
/// frequency inside `universe`, sorted.
pub fn naive_fclosed(
    seq: &EventSequence,
    config: &MiningConfig,
    universe: &EpisodeUniverse,
) -> Result<Vec<(Episode, usize)>, BudgetError> {
    check_length(seq)?;
    if let Some(k) = config.max_nodes {
        assert!(
            k <= universe.max_nodes,
            "universe smaller than the node cap"
        );
    }
    let mut frequent: Vec<(Episode, usize)> = Vec::new();
    let mut dead_labels: HashSet<Vec<Label>> = HashSet::new();
    for g in &universe.episodes {
        if config.max_nodes.is_some_and(|k| g.node_count() > k) {
            continue;
        }
        if dead_labels.contains(g.labels()) {
            continue;
        }
        let freq = naive_scan(g, seq, config.window)?.frequency(config.measure);
        if freq >= config.min_freq {
            frequent.push((g.clone(), freq));
        } else if g.is_parallel() {
            // Every episode over these labels sits above the parallel one.
            dead_labels.insert(g.labels().to_vec());
        }
    }
    let closed = frequent
        .iter()
        .filter(|(g, f)| {
            !frequent.iter().any(|(h, fh)| {
                fh == f && h.node_count() >= g.node_count() && is_strict_subepisode(g, h)
            })
        })
        .cloned()
        .collect();
    Ok(closed)
}

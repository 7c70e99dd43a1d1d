//! Greedy coverage and minimal-window discovery.
//!
//! All scans share one engine: each node keeps its current position `f(v)`
//! and a lower bound `b(v)`; a FIFO worklist re-binds nodes until every
//! skeleton edge is honoured, which yields the earliest (greedy) mapping.
//! Advancing the node with the smallest position and settling again walks
//! through the greedy mappings of every suffix, whose spans are the
//! candidate minimal windows.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::episode::{Episode, NodeId};
use crate::sequence::{EventSequence, Interval};

/// Node-to-position map of one occurrence (1-based positions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingVector(pub Vec<usize>);

impl MappingVector {
    pub fn position(&self, v: NodeId) -> usize {
        self.0[v]
    }

    pub fn span(&self) -> Option<Interval> {
        let lo = *self.0.iter().min()?;
        let hi = *self.0.iter().max()?;
        Some(Interval::new(lo, hi))
    }
}

/// Frequency measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Measure {
    /// Number of width-ρ sliding windows covering the episode.
    #[default]
    Fixed,
    /// Maximum number of pairwise disjoint covering windows of width ≤ ρ.
    Disjoint,
}

/// Work counters of a scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanStats {
    /// Occurrence-list entries examined while searching positions.
    pub event_visits: u64,
    /// Valid mappings found (before duplicate-end pruning).
    pub mappings: u64,
}

struct Scan<'a> {
    occ: Vec<&'a [u32]>,
    skeleton_out: Vec<Vec<NodeId>>,
    pos: Vec<usize>,
    bound: Vec<usize>,
    cursor: Vec<usize>,
    queue: VecDeque<NodeId>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<(usize, NodeId)>>,
    max_pos: usize,
    stats: ScanStats,
}

impl<'a> Scan<'a> {
    fn new(episode: &Episode, seq: &'a EventSequence, start: usize) -> Self {
        let n = episode.node_count();
        let mut skeleton_out = vec![Vec::new(); n];
        for e in episode.skeleton_edges() {
            skeleton_out[e.source].push(e.target);
        }
        Scan {
            occ: episode
                .labels()
                .iter()
                .map(|&l| seq.occurrences(l))
                .collect(),
            skeleton_out,
            pos: vec![0; n],
            bound: vec![start.saturating_sub(1); n],
            cursor: vec![0; n],
            queue: (0..n).collect(),
            queued: vec![true; n],
            heap: BinaryHeap::with_capacity(2 * n),
            max_pos: 0,
            stats: ScanStats::default(),
        }
    }

    /// Smallest occurrence past the node's bound. Cursors only move forward
    /// because bounds never decrease.
    fn advance(&mut self, v: NodeId) -> bool {
        let occ = self.occ[v];
        let mut c = self.cursor[v];
        while c < occ.len() && occ[c] as usize <= self.bound[v] {
            c += 1;
            self.stats.event_visits += 1;
        }
        self.stats.event_visits += 1;
        self.cursor[v] = c;
        match occ.get(c) {
            Some(&p) => {
                let p = p as usize;
                self.pos[v] = p;
                self.max_pos = self.max_pos.max(p);
                self.heap.push(Reverse((p, v)));
                true
            }
            None => false,
        }
    }

    /// Drains the worklist; false once some node runs out of occurrences.
    fn settle(&mut self) -> bool {
        while let Some(v) = self.queue.pop_front() {
            self.queued[v] = false;
            if !self.advance(v) {
                return false;
            }
            let fv = self.pos[v];
            for k in 0..self.skeleton_out[v].len() {
                let w = self.skeleton_out[v][k];
                if fv > self.bound[w] {
                    self.bound[w] = fv;
                }
                if self.bound[w] >= self.pos[w] && !self.queued[w] {
                    self.queued[w] = true;
                    self.queue.push_back(w);
                }
            }
        }
        self.stats.mappings += 1;
        true
    }

    fn min_node(&mut self) -> (usize, NodeId) {
        loop {
            let Reverse((p, v)) = *self.heap.peek().expect("settled scan has bound nodes");
            if self.pos[v] == p && !self.queued[v] {
                return (p, v);
            }
            self.heap.pop();
        }
    }

    /// Forces the earliest node past its current position.
    fn restart(&mut self) {
        let (p, v) = self.min_node();
        self.heap.pop();
        self.bound[v] = p;
        self.queued[v] = true;
        self.queue.push_back(v);
    }
}

/// The greedy mapping of `episode` into the suffix starting at `start`
/// (1-based), or `None` when the suffix does not cover it.
pub fn greedy_map(episode: &Episode, seq: &EventSequence, start: usize) -> Option<MappingVector> {
    let mut scan = Scan::new(episode, seq, start.max(1));
    let found = scan.settle();
    found.then_some(MappingVector(scan.pos))
}

/// True when the whole sequence covers `episode`.
pub fn covers(episode: &Episode, seq: &EventSequence) -> bool {
    greedy_map(episode, seq, 1).is_some()
}

/// Visits every greedy mapping found while sweeping the sequence whose span
/// is at most `window` wide, in increasing order of both endpoints.
pub fn scan_mappings<F>(
    episode: &Episode,
    seq: &EventSequence,
    window: usize,
    mut visit: F,
) -> ScanStats
where
    F: FnMut(Interval, &[usize]),
{
    if episode.is_empty() || window == 0 {
        return ScanStats::default();
    }
    let mut scan = Scan::new(episode, seq, 1);
    while scan.settle() {
        let (lo, _) = scan.min_node();
        let hi = scan.max_pos;
        if hi - lo < window {
            visit(Interval::new(lo, hi), &scan.pos);
        }
        scan.restart();
    }
    scan.stats
}

/// All minimal windows of `episode` no wider than `window`, sorted.
pub fn find_minimal_windows(
    episode: &Episode,
    seq: &EventSequence,
    window: usize,
) -> Vec<Interval> {
    find_minimal_windows_with_stats(episode, seq, window).0
}

pub fn find_minimal_windows_with_stats(
    episode: &Episode,
    seq: &EventSequence,
    window: usize,
) -> (Vec<Interval>, ScanStats) {
    let mut out: Vec<Interval> = Vec::new();
    let stats = scan_mappings(episode, seq, window, |iv, _| push_window(&mut out, iv));
    (out, stats)
}

/// A later span ending where the previous one ends is nested inside it.
pub(crate) fn push_window(out: &mut Vec<Interval>, iv: Interval) {
    if out.last().is_some_and(|last| last.end == iv.end) {
        out.pop();
    }
    out.push(iv);
}

/// Number of width-`window` sliding windows (allowed to overhang both ends)
/// that contain at least one of the given minimal windows.
pub fn fixed_frequency(windows: &[Interval], window: usize) -> usize {
    let rho = window as i64;
    let mut total = 0i64;
    let mut covered_to = i64::MIN;
    for w in windows {
        // Starts a with a <= w.start and a + rho - 1 >= w.end.
        let lo = (w.end as i64 - rho + 1).max(covered_to + 1);
        let hi = w.start as i64;
        if hi >= lo {
            total += hi - lo + 1;
            covered_to = hi;
        }
    }
    total as usize
}

/// Maximum number of pairwise disjoint minimal windows (earliest-end greedy).
pub fn disjoint_frequency(windows: &[Interval]) -> usize {
    let mut count = 0;
    let mut last_end = 0usize;
    for w in windows {
        if count == 0 || w.start > last_end {
            count += 1;
            last_end = w.end;
        }
    }
    count
}

/// Frequency under `measure` from the exact minimal windows of width ≤ `window`.
pub fn frequency(windows: &[Interval], window: usize, measure: Measure) -> usize {
    match measure {
        Measure::Fixed => fixed_frequency(windows, window),
        Measure::Disjoint => disjoint_frequency(windows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Label;

    fn seq(s: &str) -> EventSequence {
        EventSequence::parse(s)
    }

    fn labels(s: &EventSequence, names: &str) -> Vec<Label> {
        names
            .chars()
            .map(|c| s.alphabet().label(&c.to_string()).unwrap())
            .collect()
    }

    fn diamond(s: &EventSequence) -> Episode {
        Episode::canonicalize(&labels(s, "abcd"), [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]).unwrap()
    }

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b)
    }

    const S1: &str = "a b c b d a c b c d";

    #[test]
    fn greedy_map_diamond() {
        let s = seq(S1);
        let d = diamond(&s);
        assert_eq!(greedy_map(&d, &s, 1), Some(MappingVector(vec![1, 2, 3, 5])));
        assert_eq!(
            greedy_map(&d, &s, 2),
            Some(MappingVector(vec![6, 8, 7, 10]))
        );
    }

    #[test]
    fn greedy_map_single_node() {
        let s = seq(S1);
        let a = Episode::parallel(&labels(&s, "a"));
        assert_eq!(greedy_map(&a, &s, 1), Some(MappingVector(vec![1])));
        assert_eq!(greedy_map(&a, &s, 7), None);
        assert_eq!(greedy_map(&a, &s, 6), Some(MappingVector(vec![6])));
        assert_eq!(greedy_map(&a, &s, 11), None);
    }

    #[test]
    fn minimal_windows_diamond() {
        let s = seq(S1);
        assert_eq!(
            find_minimal_windows(&diamond(&s), &s, 5),
            vec![iv(1, 5), iv(6, 10)]
        );
    }

    #[test]
    fn minimal_windows_parallel_pair() {
        let s = seq(S1);
        let bd = Episode::parallel(&labels(&s, "bd"));
        assert_eq!(
            find_minimal_windows(&bd, &s, 5),
            vec![iv(4, 5), iv(5, 8), iv(8, 10)]
        );
    }

    #[test]
    fn minimal_windows_serial_triple() {
        let s = seq("a x b y a x b");
        let axb = Episode::serial(&labels(&s, "axb"));
        assert_eq!(find_minimal_windows(&axb, &s, 3), vec![iv(1, 3), iv(5, 7)]);
        assert!(find_minimal_windows(&axb, &s, 2).is_empty());
    }

    #[test]
    fn minimal_windows_of_equal_label_chain() {
        let s = seq("a b a a b a");
        let aa = Episode::parallel(&labels(&s, "aa"));
        assert_eq!(
            find_minimal_windows(&aa, &s, 6),
            vec![iv(1, 3), iv(3, 4), iv(4, 6)]
        );
    }

    #[test]
    fn frequencies() {
        assert_eq!(fixed_frequency(&[iv(1, 5), iv(6, 10)], 5), 2);
        assert_eq!(disjoint_frequency(&[iv(1, 5), iv(6, 10)]), 2);
        assert_eq!(frequency(&[], 5, Measure::Fixed), 0);
        assert_eq!(frequency(&[], 5, Measure::Disjoint), 0);
        let w = [iv(4, 5), iv(5, 8), iv(8, 10)];
        assert_eq!(disjoint_frequency(&w), 2);
        assert_eq!(fixed_frequency(&w, 5), 8);
    }

    #[test]
    fn fixed_frequency_overhangs_ends() {
        // A single event at position 1 in a sequence of length 1, window 3:
        // starts -1, 0, 1 all contain it.
        assert_eq!(fixed_frequency(&[iv(1, 1)], 3), 3);
    }

    #[test]
    fn covers_examples() {
        let s = seq(S1);
        assert!(covers(&diamond(&s), &s));
        assert!(covers(&Episode::serial(&labels(&s, "da")), &s));
        let s2 = seq("a x b y a x b");
        assert!(!covers(&Episode::serial(&labels(&s2, "bxa")), &s2));
        assert!(covers(&Episode::serial(&labels(&s2, "aba")), &s2));
    }

    #[test]
    fn label_missing_from_sequence() {
        let s = seq("a b");
        let other = EventSequence::parse("a b z");
        let z = Episode::parallel(&[other.alphabet().label("z").unwrap()]);
        assert!(find_minimal_windows(&z, &s, 3).is_empty());
    }
}

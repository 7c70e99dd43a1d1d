//! Discovered episodes and their bookkeeping.

use std::collections::{BTreeMap, HashMap};

use crate::episode::Episode;
use crate::label::Label;
use crate::scanner::Measure;
use crate::sequence::Interval;

/// An episode with its closure and frequencies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpisodeRecord {
    pub episode: Episode,
    pub closure: Episode,
    pub freq_fixed: usize,
    pub freq_disjoint: usize,
    pub minimal_windows: Vec<Interval>,
}

impl EpisodeRecord {
    pub fn frequency(&self, measure: Measure) -> usize {
        match measure {
            Measure::Fixed => self.freq_fixed,
            Measure::Disjoint => self.freq_disjoint,
        }
    }
}

/// Records keyed by canonical form, indexed by `(nodes, edges)` level and by
/// label multiset.
#[derive(Clone, Debug, Default)]
pub struct EpisodeStore {
    records: Vec<EpisodeRecord>,
    by_episode: HashMap<Episode, usize>,
    by_level: BTreeMap<(usize, usize), Vec<usize>>,
    by_labels: HashMap<Vec<Label>, Vec<usize>>,
}

impl EpisodeStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// The empty episode counts as always present.
    pub fn contains(&self, episode: &Episode) -> bool {
        episode.is_empty() || self.by_episode.contains_key(episode)
    }

    pub fn get(&self, episode: &Episode) -> Option<&EpisodeRecord> {
        self.by_episode.get(episode).map(|&i| &self.records[i])
    }

    /// Inserts unless an equivalent episode is already stored; returns
    /// whether the record was added.
    pub fn insert(&mut self, record: EpisodeRecord) -> bool {
        if self.by_episode.contains_key(&record.episode) {
            return false;
        }
        let id = self.records.len();
        let key = (record.episode.node_count(), record.episode.edge_count());
        self.by_episode.insert(record.episode.clone(), id);
        self.by_level.entry(key).or_default().push(id);
        self.by_labels
            .entry(record.episode.labels().to_vec())
            .or_default()
            .push(id);
        self.records.push(record);
        true
    }

    pub fn records(&self) -> &[EpisodeRecord] {
        &self.records
    }

    /// Records with exactly `nodes` nodes and `edges` edges, in insertion order.
    pub fn level(&self, nodes: usize, edges: usize) -> Vec<&EpisodeRecord> {
        self.by_level
            .get(&(nodes, edges))
            .map(|ids| ids.iter().map(|&i| &self.records[i]).collect())
            .unwrap_or_default()
    }

    pub fn with_labels(&self, labels: &[Label]) -> Vec<&EpisodeRecord> {
        self.by_labels
            .get(labels)
            .map(|ids| ids.iter().map(|&i| &self.records[i]).collect())
            .unwrap_or_default()
    }

    /// Parallel episodes with `nodes` nodes.
    pub fn parallel(&self, nodes: usize) -> Vec<&EpisodeRecord> {
        self.by_level
            .range((nodes, 0)..(nodes + 1, 0))
            .flat_map(|(_, ids)| ids.iter().map(|&i| &self.records[i]))
            .filter(|r| r.episode.is_parallel())
            .collect()
    }

    pub fn has_at_least_nodes(&self, nodes: usize) -> bool {
        self.by_level.range((nodes, 0)..).next().is_some()
    }

    pub fn has_at_least_edges(&self, nodes: usize, edges: usize) -> bool {
        self.by_level
            .range((nodes, edges)..(nodes + 1, 0))
            .next()
            .is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(e: Episode) -> EpisodeRecord {
        EpisodeRecord {
            closure: e.clone(),
            episode: e,
            freq_fixed: 1,
            freq_disjoint: 1,
            minimal_windows: Vec::new(),
        }
    }

    #[test]
    fn insert_is_keyed_by_canonical_form() {
        let a = Label::new(0);
        let b = Label::new(1);
        let mut store = EpisodeStore::new();
        assert!(store.insert(rec(Episode::parallel(&[b, a]))));
        assert!(!store.insert(rec(Episode::parallel(&[a, b]))));
        assert!(store.insert(rec(Episode::serial(&[a, b]))));
        assert_eq!(store.len(), 2);
        assert_eq!(store.level(2, 0).len(), 1);
        assert_eq!(store.level(2, 1).len(), 1);
        assert_eq!(store.with_labels(&[a, b]).len(), 2);
        assert_eq!(store.parallel(2).len(), 1);
        assert!(store.contains(&Episode::empty()));
        assert!(store.has_at_least_edges(2, 1));
        assert!(!store.has_at_least_edges(2, 2));
        assert!(store.has_at_least_nodes(2));
        assert!(!store.has_at_least_nodes(3));
    }
}

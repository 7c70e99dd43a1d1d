//! Instance-based closure operators.
//!
//! All three operators are computed from minimal windows: a label joins the
//! node closure when it occurs in every minimal window, and an edge `(x, y)`
//! joins the edge closure when `G + (y, x)` has no minimal window at all.

use crate::episode::{Edge, Episode};
use crate::scanner::{find_minimal_windows, scan_mappings};
use crate::sequence::{EventSequence, Interval};

/// Which closure defines "closed".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ClosureMode {
    /// Edge closure only.
    Edge,
    /// Node closure followed by edge closure.
    #[default]
    Instance,
}

/// A sequence together with the maximal window width.
#[derive(Clone, Copy, Debug)]
pub struct ClosureContext<'a> {
    pub sequence: &'a EventSequence,
    pub window: usize,
}

impl<'a> ClosureContext<'a> {
    pub fn new(sequence: &'a EventSequence, window: usize) -> Self {
        assert!(window >= 1, "window must be positive");
        ClosureContext { sequence, window }
    }

    pub fn minimal_windows(&self, episode: &Episode) -> Vec<Interval> {
        find_minimal_windows(episode, self.sequence, self.window)
    }

    /// Adds one solitary node for each label present in every minimal window
    /// and absent from the episode.
    pub fn node_closure(&self, episode: &Episode) -> Episode {
        let windows = self.minimal_windows(episode);
        self.node_closure_from_windows(episode, &windows)
    }

    pub(crate) fn node_closure_from_windows(
        &self,
        episode: &Episode,
        windows: &[Interval],
    ) -> Episode {
        let Some(first) = windows.first() else {
            return episode.clone();
        };
        let alphabet_len = self.sequence.alphabet().len();
        let mut common = vec![false; alphabet_len];
        let mut candidates: Vec<usize> = Vec::new();
        for p in first.start..=first.end {
            let l = self.sequence.at(p).index();
            if !common[l] {
                common[l] = true;
                candidates.push(l);
            }
        }
        candidates.retain(|&l| {
            let present = episode.labels().iter().any(|x| x.index() == l);
            !present
        });
        let mut seen = vec![false; alphabet_len];
        for w in &windows[1..] {
            if candidates.is_empty() {
                break;
            }
            for p in w.start..=w.end {
                seen[self.sequence.at(p).index()] = true;
            }
            candidates.retain(|&l| seen[l]);
            for p in w.start..=w.end {
                seen[self.sequence.at(p).index()] = false;
            }
        }
        if candidates.is_empty() {
            return episode.clone();
        }
        let mut labels = episode.labels().to_vec();
        labels.extend(
            candidates
                .iter()
                .map(|&l| crate::label::Label::new(l as u32)),
        );
        Episode::canonicalize(&labels, episode.edges())
            .expect("adding solitary nodes with new labels keeps the episode strict")
    }

    /// Tightens the episode to the order shared by all of its instances.
    pub fn edge_closure(&self, episode: &Episode) -> Episode {
        self.edge_closure_with(episode, true)
    }

    /// `sieve` first rules out every pair seen in both orders among the
    /// mappings found while scanning the episode itself; the remaining pairs
    /// get a full scan. Both settings give the same result.
    pub fn edge_closure_with(&self, episode: &Episode, sieve: bool) -> Episode {
        let n = episode.node_count();
        let pairs: Vec<Edge> = (0..n)
            .flat_map(|x| (0..n).map(move |y| Edge::new(x, y)))
            .filter(|e| {
                e.source != e.target
                    && episode.label(e.source) != episode.label(e.target)
                    && !episode.has_edge(*e)
                    && !episode.has_edge(e.reversed())
            })
            .collect();

        // seen_before[x] has bit y when some instance puts y before x.
        let mut seen_before = vec![0u64; n];
        let mut any_window = false;
        scan_mappings(episode, self.sequence, self.window, |_, pos| {
            any_window = true;
            if sieve {
                for x in 0..n {
                    for y in 0..n {
                        if pos[y] < pos[x] {
                            seen_before[x] |= 1 << y;
                        }
                    }
                }
            }
        });
        if !any_window {
            return episode.clone();
        }
        if pairs.is_empty() {
            return episode.clone();
        }

        let mut added = Vec::new();
        for e in pairs {
            if sieve && seen_before[e.source] & (1 << e.target) != 0 {
                continue;
            }
            let reversed = episode
                .with_edge(e.reversed())
                .expect("no path joins the pair, so the reverse edge is acyclic")
                .transitive_closure();
            if self.minimal_windows(&reversed).is_empty() {
                added.push(e);
            }
        }
        if added.is_empty() {
            return episode.clone();
        }
        let closed = episode
            .with_edges(added)
            .expect("orders shared by all instances are acyclic")
            .transitive_closure();
        debug_assert!(closed.is_transitively_closed());
        closed
    }

    /// Edge closure of the node closure.
    pub fn i_closure(&self, episode: &Episode) -> Episode {
        self.edge_closure(&self.node_closure(episode))
    }

    pub fn closure(&self, episode: &Episode, mode: ClosureMode) -> Episode {
        match mode {
            ClosureMode::Edge => self.edge_closure(episode),
            ClosureMode::Instance => self.i_closure(episode),
        }
    }

    pub fn is_closed(&self, episode: &Episode, mode: ClosureMode) -> bool {
        self.closure(episode, mode) == *episode
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Label;

    fn labels(s: &EventSequence, names: &str) -> Vec<Label> {
        names
            .chars()
            .map(|c| s.alphabet().label(&c.to_string()).unwrap())
            .collect()
    }

    fn ep(s: &EventSequence, names: &str, edges: &[(usize, usize)]) -> Episode {
        Episode::canonicalize(&labels(s, names), edges.iter().copied()).unwrap()
    }

    const S1: &str = "a b c b d a c b c d";
    const S2: &str = "a x b y a x b";
    const S3: &str = "a c b x x a b c x x b a c";

    fn diamond(s: &EventSequence) -> Episode {
        ep(s, "abcd", &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)])
    }

    #[test]
    fn node_closure_adds_common_symbol() {
        let s = EventSequence::parse(S2);
        let ctx = ClosureContext::new(&s, 3);
        let ab = Episode::serial(&labels(&s, "ab"));
        assert_eq!(ctx.node_closure(&ab), ep(&s, "abx", &[(0, 1)]));
    }

    #[test]
    fn node_closure_keeps_diamond() {
        let s = EventSequence::parse(S1);
        let ctx = ClosureContext::new(&s, 5);
        assert_eq!(ctx.node_closure(&diamond(&s)), diamond(&s));
    }

    #[test]
    fn node_closure_without_windows_is_identity() {
        let s = EventSequence::parse(S1);
        let ctx = ClosureContext::new(&s, 2);
        let d = diamond(&s);
        assert_eq!(ctx.node_closure(&d), d);
        assert_eq!(ctx.edge_closure(&d), d);
    }

    #[test]
    fn edge_closure_of_source_star_is_diamond() {
        let s = EventSequence::parse(S1);
        let ctx = ClosureContext::new(&s, 5);
        let star = ep(&s, "abcd", &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(ctx.edge_closure(&star), diamond(&s));
        assert_eq!(ctx.edge_closure_with(&star, false), diamond(&s));
        assert!(!ctx.is_closed(&star, ClosureMode::Edge));
    }

    #[test]
    fn parallel_is_edge_closed_on_s1() {
        // c3 b4 d5 a6 puts a after everything else.
        let s = EventSequence::parse(S1);
        let ctx = ClosureContext::new(&s, 5);
        let p = Episode::parallel(&labels(&s, "abcd"));
        assert_eq!(ctx.edge_closure(&p), p);
    }

    #[test]
    fn edge_closure_orders_first_event() {
        let s = EventSequence::parse(S3);
        let ctx = ClosureContext::new(&s, 3);
        let g = ep(&s, "abc", &[(0, 1)]);
        assert_eq!(ctx.edge_closure(&g), ep(&s, "abc", &[(0, 1), (0, 2)]));
        assert!(!ctx.is_closed(&g, ClosureMode::Edge));
    }

    #[test]
    fn edge_closure_fixpoint() {
        let s = EventSequence::parse(S3);
        let ctx = ClosureContext::new(&s, 3);
        let abc = Episode::serial(&labels(&s, "abc"));
        assert_eq!(ctx.edge_closure(&abc), abc);
    }

    #[test]
    fn i_closure_examples() {
        let s = EventSequence::parse(S2);
        let ctx = ClosureContext::new(&s, 3);
        let ab = Episode::serial(&labels(&s, "ab"));
        assert_eq!(ctx.i_closure(&ab), Episode::serial(&labels(&s, "axb")));

        let s1 = EventSequence::parse(S1);
        let ctx1 = ClosureContext::new(&s1, 5);
        assert_eq!(ctx1.i_closure(&diamond(&s1)), diamond(&s1));
        assert!(ctx1.is_closed(&diamond(&s1), ClosureMode::Instance));
    }

    #[test]
    fn unique_instance_closes_to_serial() {
        let s = EventSequence::parse("q d c b a r");
        let ctx = ClosureContext::new(&s, 4);
        let p = Episode::parallel(&labels(&s, "abcd"));
        assert_eq!(ctx.i_closure(&p), Episode::serial(&labels(&s, "dcba")));
    }
}

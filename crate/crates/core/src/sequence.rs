//! Event sequences with per-label occurrence lists.

use crate::label::{Alphabet, Label};

/// A string of events, addressed with 1-based positions.
#[derive(Clone, Debug, Default)]
pub struct EventSequence {
    alphabet: Alphabet,
    events: Vec<Label>,
    occurrences: Vec<Vec<u32>>,
}

impl EventSequence {
    /// Interns `tokens` into a fresh alphabet.
    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let tokens: Vec<S> = tokens.into_iter().collect();
        let alphabet = Alphabet::from_symbols(tokens.iter().map(|t| t.as_ref()));
        let events = tokens
            .iter()
            .map(|t| {
                alphabet
                    .label(t.as_ref())
                    .expect("symbol was interned above")
            })
            .collect();
        Self::new(alphabet, events)
    }

    /// Whitespace-separated tokens; single characters are handy for fixtures.
    pub fn parse(text: &str) -> Self {
        Self::from_tokens(text.split_whitespace())
    }

    pub fn new(alphabet: Alphabet, events: Vec<Label>) -> Self {
        let mut occurrences = vec![Vec::new(); alphabet.len()];
        for (i, l) in events.iter().enumerate() {
            occurrences[l.index()].push(i as u32 + 1);
        }
        EventSequence {
            alphabet,
            events,
            occurrences,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[Label] {
        &self.events
    }

    /// Event at 1-based position `i`.
    pub fn at(&self, i: usize) -> Label {
        self.events[i - 1]
    }

    /// Sorted 1-based positions of `label`.
    pub fn occurrences(&self, label: Label) -> &[u32] {
        self.occurrences
            .get(label.index())
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Smallest position `> after` holding `label`.
    pub fn next_occurrence(&self, label: Label, after: usize) -> Option<usize> {
        let occ = self.occurrences(label);
        let k = occ.partition_point(|&p| (p as usize) <= after);
        occ.get(k).map(|&p| p as usize)
    }

    /// Labels that occur in the sequence, ascending.
    pub fn present_labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.alphabet
            .labels()
            .filter(move |l| !self.occurrences(*l).is_empty())
    }
}

/// Inclusive position range `[start, end]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Interval { start, end }
    }

    pub fn width(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

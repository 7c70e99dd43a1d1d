#![allow(dead_code)]

use closed_episodes::{Episode, EventSequence, Label};
use proptest::prelude::*;

pub const SYMBOLS: [&str; 4] = ["a", "b", "c", "d"];

/// Sequence over the first `sigma` symbols; every symbol is interned even if
/// absent so label ids stay stable.
pub fn sequence(tokens: &[usize], sigma: usize) -> EventSequence {
    let alphabet = closed_episodes::Alphabet::from_symbols(&SYMBOLS[..sigma]);
    let events = tokens.iter().map(|&t| Label::new(t as u32)).collect();
    EventSequence::new(alphabet, events)
}

/// Builds a strict closed episode: nodes laid out along `order`, edges picked
/// from forward pairs by `mask`, equal labels chained, then closed.
pub fn episode(labels: &[usize], order: &[usize], mask: u64) -> Episode {
    let n = labels.len();
    let labels: Vec<Label> = labels.iter().map(|&l| Label::new(l as u32)).collect();
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in 0..n {
            if rank[u] < rank[v] {
                if labels[u] == labels[v] || mask & (1 << bit) != 0 {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
    }
    Episode::canonicalize(&labels, edges)
        .unwrap()
        .transitive_closure()
}

pub fn arb_episode(max_nodes: usize, sigma: usize) -> impl Strategy<Value = Episode> {
    (1..=max_nodes)
        .prop_flat_map(move |n| {
            (
                proptest::collection::vec(0..sigma, n),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
                any::<u64>(),
            )
        })
        .prop_map(|(labels, order, mask)| episode(&labels, &order, mask))
}

pub fn arb_sequence(max_len: usize, sigma: usize) -> impl Strategy<Value = EventSequence> {
    proptest::collection::vec(0..sigma, 0..=max_len).prop_map(move |t| sequence(&t, sigma))
}

pub fn names(s: &EventSequence, text: &str) -> Vec<Label> {
    text.chars()
        .map(|c| s.alphabet().label(&c.to_string()).unwrap())
        .collect()
}

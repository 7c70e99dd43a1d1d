use closed_episodes::scanner::find_minimal_windows_with_stats;
use closed_episodes::{Episode, EventSequence, Label};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_sequence(len: usize, sigma: usize, seed: u64) -> EventSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tokens: Vec<String> = (0..len)
        .map(|_| format!("e{}", rng.gen_range(0..sigma)))
        .collect();
    EventSequence::from_tokens(tokens)
}

fn shapes(s: &EventSequence) -> [(&'static str, Episode); 2] {
    let l: Vec<Label> = ["e0", "e1", "e2", "e3"]
        .iter()
        .map(|n| s.alphabet().label(n).unwrap())
        .collect();
    [
        ("serial", Episode::serial(&l)),
        ("parallel", Episode::parallel(&l)),
    ]
}

/// Visits per event stay flat as the sequence grows sixteenfold.
#[test]
fn event_visits_grow_linearly() {
    for shape in 0..2 {
        let mut ratios = Vec::new();
        for len in [2_000, 8_000, 32_000] {
            let s = random_sequence(len, 6, 3);
            let (name, g) = shapes(&s)[shape].clone();
            let (windows, stats) = find_minimal_windows_with_stats(&g, &s, 10);
            assert!(!windows.is_empty(), "{name}");
            ratios.push(stats.event_visits as f64 / len as f64);
        }
        let (lo, hi) = ratios
            .iter()
            .fold((f64::MAX, 0f64), |(a, b), &r| (a.min(r), b.max(r)));
        assert!(hi / lo < 1.25, "shape {shape}: {ratios:?}");
    }
}

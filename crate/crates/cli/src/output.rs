//! Episode files and the per-size report.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::time::Duration;

use closed_episodes::{format_episode, Alphabet, Episode, EpisodeRecord, Measure};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

/// One line of a jsonl episode file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpisodeLine {
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub freq_fixed: usize,
    pub freq_disjoint: usize,
    pub closed_kind: String,
}

impl EpisodeLine {
    pub fn new(record: &EpisodeRecord, alphabet: &Alphabet, closed_kind: &str) -> Self {
        let g = &record.episode;
        EpisodeLine {
            nodes: g
                .labels()
                .iter()
                .map(|&l| alphabet.name(l).to_string())
                .collect(),
            edges: g.edges().map(|e| (e.source, e.target)).collect(),
            freq_fixed: record.freq_fixed,
            freq_disjoint: record.freq_disjoint,
            closed_kind: closed_kind.to_string(),
        }
    }

    /// `None` when a node name is not in `alphabet` or the edges are invalid.
    pub fn episode(&self, alphabet: &Alphabet) -> Option<Episode> {
        let labels = self
            .nodes
            .iter()
            .map(|n| alphabet.label(n))
            .collect::<Option<Vec<_>>>()?;
        Episode::canonicalize(&labels, self.edges.iter().copied()).ok()
    }
}

/// Sorted by node count, edge count and labels.
pub fn sort_records(records: &mut [EpisodeRecord]) {
    records.sort_by(|a, b| a.episode.cmp(&b.episode));
}

pub fn emit<W: Write>(
    out: &mut W,
    records: &[EpisodeRecord],
    alphabet: &Alphabet,
    format: Format,
    measure: Measure,
    closed_kind: &str,
) -> io::Result<()> {
    for r in records {
        match format {
            Format::Text => writeln!(
                out,
                "freq={} {}",
                r.frequency(measure),
                format_episode(&r.episode, alphabet)
            )?,
            Format::Jsonl => {
                let line = EpisodeLine::new(r, alphabet, closed_kind);
                serde_json::to_writer(&mut *out, &line)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

/// Rows `size,f_closed,i_closed,runtime_ms`; the runtime is the search time
/// spent on that node level.
pub fn write_report<W: Write>(
    out: &mut W,
    f_closed: &[EpisodeRecord],
    closed: &[EpisodeRecord],
    level_times: &[(usize, Duration)],
) -> io::Result<()> {
    let mut rows: BTreeMap<usize, (usize, usize, u128)> = BTreeMap::new();
    for r in f_closed {
        rows.entry(r.episode.node_count()).or_default().0 += 1;
    }
    for r in closed {
        rows.entry(r.episode.node_count()).or_default().1 += 1;
    }
    for &(size, t) in level_times {
        rows.entry(size).or_default().2 = t.as_millis();
    }
    writeln!(out, "size,f_closed,i_closed,runtime_ms")?;
    for (size, (f, i, ms)) in rows {
        writeln!(out, "{size},{f},{i},{ms}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use closed_episodes::EventSequence;

    fn diamond_record() -> (EventSequence, EpisodeRecord) {
        let s = EventSequence::parse("a b c b d a c b c d");
        let l: Vec<_> = ["a", "b", "c", "d"]
            .iter()
            .map(|n| s.alphabet().label(n).unwrap())
            .collect();
        let g = Episode::canonicalize(&l, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        let r = EpisodeRecord {
            closure: g.clone(),
            episode: g,
            freq_fixed: 2,
            freq_disjoint: 2,
            minimal_windows: vec![],
        };
        (s, r)
    }

    #[test]
    fn text_line() {
        let (s, r) = diamond_record();
        let mut buf = Vec::new();
        emit(
            &mut buf,
            &[r],
            s.alphabet(),
            Format::Text,
            Measure::Fixed,
            "f-closed",
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "freq=2 nodes=[a,b,c,d] edges=[(0,1),(0,2),(0,3),(1,3),(2,3)]\n"
        );
    }

    #[test]
    fn jsonl_round_trip() {
        let (s, r) = diamond_record();
        let mut buf = Vec::new();
        emit(
            &mut buf,
            std::slice::from_ref(&r),
            s.alphabet(),
            Format::Jsonl,
            Measure::Fixed,
            "f-closed",
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        let line: EpisodeLine = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(line.episode(s.alphabet()), Some(r.episode));
        assert_eq!(line.closed_kind, "f-closed");
        assert_eq!((line.freq_fixed, line.freq_disjoint), (2, 2));
    }

    #[test]
    fn empty_output_and_report() {
        let (s, _) = diamond_record();
        let mut buf = Vec::new();
        emit(
            &mut buf,
            &[],
            s.alphabet(),
            Format::Text,
            Measure::Fixed,
            "f-closed",
        )
        .unwrap();
        assert!(buf.is_empty());
        let mut report = Vec::new();
        write_report(&mut report, &[], &[], &[]).unwrap();
        assert_eq!(
            String::from_utf8(report).unwrap(),
            "size,f_closed,i_closed,runtime_ms\n"
        );
    }

    #[test]
    fn report_counts_per_size() {
        let (_, r) = diamond_record();
        let mut report = Vec::new();
        write_report(
            &mut report,
            std::slice::from_ref(&r),
            std::slice::from_ref(&r),
            &[(1, Duration::from_millis(3))],
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(report).unwrap(),
            "size,f_closed,i_closed,runtime_ms\n1,0,0,3\n4,1,1,0\n"
        );
    }
}

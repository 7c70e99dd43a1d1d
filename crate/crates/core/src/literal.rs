//! Text form of an episode: `nodes=[a,b,c] edges=[(0,1),(0,2)]`.
//!
//! Node indices in the printed form follow canonical order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::episode::{Episode, EpisodeError};
use crate::label::{Alphabet, Label};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiteralError {
    #[error("malformed episode literal: {0}")]
    Syntax(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error(transparent)]
    Episode(#[from] EpisodeError),
}

pub fn format_episode(episode: &Episode, alphabet: &Alphabet) -> String {
    let mut out = String::from("nodes=[");
    for (i, &l) in episode.labels().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(alphabet.name(l));
    }
    out.push_str("] edges=[");
    for (i, e) in episode.edges().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "({},{})", e.source, e.target).unwrap();
    }
    out.push(']');
    out
}

/// Parses a literal; the edge list may be any DAG and is transitively closed.
pub fn parse_episode(text: &str, alphabet: &Alphabet) -> Result<Episode, LiteralError> {
    let syntax = |msg: &str| LiteralError::Syntax(format!("{msg} in `{text}`"));
    let text = text.trim();
    let rest = text
        .strip_prefix("nodes=[")
        .ok_or_else(|| syntax("expected `nodes=[`"))?;
    let (nodes, rest) = rest
        .split_once(']')
        .ok_or_else(|| syntax("unclosed node list"))?;
    let rest = rest
        .trim_start()
        .strip_prefix("edges=[")
        .ok_or_else(|| syntax("expected `edges=[`"))?;
    let edges = rest
        .strip_suffix(']')
        .ok_or_else(|| syntax("unclosed edge list"))?;

    let labels = nodes
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            alphabet
                .label(s)
                .ok_or_else(|| LiteralError::UnknownLabel(s.to_string()))
        })
        .collect::<Result<Vec<Label>, _>>()?;

    let mut pairs = Vec::new();
    let mut rest = edges.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| syntax("expected `(`"))?;
        let (pair, tail) = body
            .split_once(')')
            .ok_or_else(|| syntax("unclosed edge"))?;
        let (a, b) = pair
            .split_once(',')
            .ok_or_else(|| syntax("edge needs two ends"))?;
        let a: usize = a.trim().parse().map_err(|_| syntax("bad node index"))?;
        let b: usize = b.trim().parse().map_err(|_| syntax("bad node index"))?;
        pairs.push((a, b));
        rest = tail.trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(Episode::canonicalize(&labels, pairs)?.transitive_closure())
}

//! Turning a token file into an event sequence.

use std::collections::HashSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use closed_episodes::EventSequence;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{0} contains no tokens")]
    EmptySequence(PathBuf),
}

#[derive(Clone, Debug, Default)]
pub struct CorpusOptions {
    pub lowercase: bool,
    /// Drops every character that is not alphanumeric.
    pub strip_punctuation: bool,
    /// One token per line, matched after the other transformations.
    pub stopword_file: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Applies the options to whitespace-separated tokens.
pub fn tokenize(text: &str, options: &CorpusOptions, stopwords: &HashSet<String>) -> Vec<String> {
    text.split_whitespace()
        .map(|t| {
            let t = if options.lowercase {
                t.to_lowercase()
            } else {
                t.to_string()
            };
            if options.strip_punctuation {
                t.chars().filter(|c| c.is_alphanumeric()).collect()
            } else {
                t
            }
        })
        .filter(|t| !t.is_empty() && !stopwords.contains(t))
        .collect()
}

pub fn load_sequence(path: &Path, options: &CorpusOptions) -> Result<EventSequence, CorpusError> {
    let stopwords: HashSet<String> = match &options.stopword_file {
        Some(p) => read(p)?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(String::from)
            .collect(),
        None => HashSet::new(),
    };
    let tokens = tokenize(&read(path)?, options, &stopwords);
    if tokens.is_empty() {
        return Err(CorpusError::EmptySequence(path.to_path_buf()));
    }
    Ok(EventSequence::from_tokens(tokens))
}

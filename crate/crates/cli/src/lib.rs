//! Corpus loading and output formats for the `closed-episodes` binary.

pub mod corpus;
pub mod output;

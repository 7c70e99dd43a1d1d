//! Mining closed episodes (strict, transitively closed partial orders of
//! events) from a single event sequence.

pub mod candgen;
pub mod closure;
pub mod episode;
pub mod label;
pub mod literal;
pub mod miner;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod scanner;
pub mod sequence;
pub mod store;

pub use closure::{ClosureContext, ClosureMode};
pub use episode::{Edge, EditOp, Episode, EpisodeError, NodeId, MAX_NODES};
pub use label::{Alphabet, Label};
pub use literal::{format_episode, parse_episode, LiteralError};
pub use miner::{mine, mine_detailed, MiningConfig, MiningError, MiningOutput};
pub use scanner::{find_minimal_windows, Measure};
pub use sequence::{EventSequence, Interval};
pub use store::{EpisodeRecord, EpisodeStore};

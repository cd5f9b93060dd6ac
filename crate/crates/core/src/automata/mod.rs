//! ω-word and binary-tree automata with parity acceptance.
//!
//! Acceptance is min-even throughout: a run is accepting iff the least
//! priority seen infinitely often is even.

pub mod game;
mod graph;
pub mod hoa;
pub mod safra;
pub mod tree;
pub mod word;

use thiserror::Error;

pub use game::{parity_solve, Owner, ParityGame, Solution as GameSolution};
pub use tree::{Pbf, RegularTree, TreeAutomaton};
pub use word::{Nwa, WordAutomaton};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomataError {
    #[error("alphabet mismatch: {0} vs {1} letters")]
    AlphabetMismatch(usize, usize),
    #[error("resource exceeded: {reached} states reached, cap {cap}")]
    ResourceExceeded { reached: usize, cap: usize },
    #[error("automaton is not nondeterministic")]
    NotNondeterministic,
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("HOA parse error at line {line}: {msg}")]
    Hoa { line: usize, msg: String },
}

/// Default state cap for constructions that can blow up.
pub const DEFAULT_CAP: usize = 20_000;

//! Finite automata, transducers and padded convolutions.

mod dfa;
pub mod expr;
mod format;
mod nfa;
mod sync;
mod transducer;

use thiserror::Error;

use crate::word::Word;

pub use dfa::Dfa;
pub use expr::{Env, ExprError, Value};
pub use format::{parse_dfa, write_dfa};
pub use nfa::Nfa;
pub use sync::{synchronize_bounded, PairAlphabet, Side, SyncAutomaton};
pub use transducer::{Edge, Transducer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomataError {
    #[error("alphabets do not match")]
    AlphabetMismatch,
    #[error("lag exceeds {bound}")]
    LagExceeded {
        bound: usize,
        input: Word,
        output: Word,
    },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

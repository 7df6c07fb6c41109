//! Rewriting, automata and derivation tools for homogeneous monoid presentations.
//!
//! Homogeneous presentations preserve length, so every congruence class
//! is finite. The [`oracle`] module exploits this to decide equality by
//! exhaustive search, and every other module is checked against it.

pub mod automata;
pub mod autostruct;
pub mod catalogue;
pub mod cli;
pub mod construct;
pub mod derivation;
pub mod oracle;
pub mod presentation;
pub mod rewrite;
pub mod word;

pub use presentation::{Classification, Presentation, RuleScheme};
pub use word::{Alphabet, Letter, Word};

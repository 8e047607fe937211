//! Decision and enumeration engine for k-automatic sequences.

pub mod automata;
pub mod error;
mod graph;
pub mod logic;
pub mod numeration;
pub mod oracle;
pub mod analyses;
pub mod regseq;
pub mod semiring;
pub mod seqgen;
mod text;

pub use automata::{Alphabet, Automaton, BoolOp, Dfa, Nfa, NfaTransition};
pub use error::{Error, Result};
pub use numeration::DigitWord;
pub use seqgen::Dfao;

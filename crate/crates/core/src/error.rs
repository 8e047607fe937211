use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid base {0}: base must be at least 2")]
    InvalidBase(u32),

    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("track {track} out of range for arity {arity}")]
    TrackOutOfRange { track: usize, arity: usize },

    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },

    #[error("automata over different alphabets (base {0}/arity {1} vs base {2}/arity {3})")]
    AlphabetMismatch(u32, usize, u32, usize),

    #[error("automaton has epsilon transitions; eliminate them first")]
    HasEpsilon,

    #[error("cannot project the only track of an arity-1 automaton")]
    ProjectArityOne,

    #[error("resource ceiling exceeded: {states} states (limit {limit})")]
    ResourceLimit { states: usize, limit: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("unbound sequence or relation `{0}`")]
    UnboundSequence(String),

    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(u32, u32),

    #[error("expected {expected} free variable(s), found {found:?}")]
    FreeVariables { expected: usize, found: Vec<String> },

    #[error("transition function is not total: state {state} has no transition on digit {digit}")]
    NotTotal { state: usize, digit: u32 },

    #[error("padding instability: state {0} changes output on a trailing zero")]
    PaddingInstability(usize),

    #[error("entry is not a natural number: {0}")]
    NotNatural(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("n = {n} exceeds the certified bound {certified} for this prefix")]
    NotCertified { n: u64, certified: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

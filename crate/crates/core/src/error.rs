use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("empty word: the free semigroup has no identity element")]
    EmptyWord,

    #[error("symbol {symbol:?} is not in alphabet {alphabet:?}")]
    UnknownSymbol { symbol: char, alphabet: String },

    #[error("symbol index {index} out of range for alphabet of size {q}")]
    SymbolIndex { index: usize, q: usize },

    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch { left: String, right: String },

    #[error("rank {rank} out of range for layer of size {q}^{n}")]
    RankOutOfRange { rank: u128, q: usize, n: usize },

    #[error("enumeration budget exceeded: {needed} items requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("automaton state budget exceeded ({cap} states)")]
    StateBudget { cap: usize },

    #[error("word of length {len} exceeds horizon {horizon}")]
    BeyondHorizon { len: usize, horizon: usize },

    #[error("invalid length sequence: {0}")]
    InvalidLengths(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

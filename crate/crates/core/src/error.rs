use thiserror::Error;

/// Errors produced by the free-group toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("letter index {index} is out of range for rank {rank}")]
    LetterOutOfRange { index: i64, rank: u32 },

    #[error("zero is not a letter index")]
    ZeroLetter,

    #[error("word is not freely reduced at position {position}")]
    NotReduced { position: usize },

    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,

    #[error("word of length {length} is too short (need at least {required})")]
    TooShort { length: usize, required: usize },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{what} overflows")]
    Overflow { what: &'static str },

    #[error("basis index {index} is out of range for a basis of size {size}")]
    BasisIndex { index: i64, size: usize },

    #[error("invalid multiplier set for a Whitehead automorphism: {0}")]
    InvalidAutomorphism(&'static str),

    #[error("power iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("invalid experiment configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

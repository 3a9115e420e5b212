use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported q = {0}; expected one of 2, 3, 4, 5, 7, 8, 9, 11, 13")]
    UnsupportedQ(u64),

    #[error("zero has no discrete logarithm")]
    ZeroLog,

    #[error("q = {q} is not congruent to 1 mod 3")]
    NotOneModThree { q: u32 },

    #[error("presentation is not fixed by j -> {multiplier}j")]
    NotMultiplierFixed { multiplier: u32 },

    #[error("presentation is not invariant under the Singer cycle")]
    NotSingerInvariant,

    #[error("{r} is not a unit modulo {n}")]
    NotAUnit { r: u64, n: u32 },

    #[error("invalid index permutation: {0}")]
    BadPermutation(String),

    #[error("integer {0} does not fit in 64 bits")]
    Overflow(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid dataset: {0}")]
    Dataset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a word must contain at least one digit")]
    EmptyWord,

    #[error("invalid digit {0:?}: expected a decimal digit 0-9")]
    InvalidDigit(char),

    #[error("position must be at least 1")]
    ZeroPosition,

    #[error("count must be at least 1")]
    ZeroCount,

    #[error("prefix length {n} is shorter than the pattern length {len}")]
    PrefixTooShort { n: u64, len: usize },

    #[error("pattern {0} must contain both a binary digit (0 or 1) and a non-binary digit")]
    NotMixed(String),

    #[error("pattern {0} contains a binary digit")]
    HasBinaryDigit(String),

    #[error("pattern {0} contains a non-binary digit")]
    NotBinary(String),

    #[error("window of length {len} at position {start} consists of binary digits only")]
    AllBinaryWindow { start: u64, len: usize },

    #[error("window at position {start} runs past the end of a finite stream")]
    PastEnd { start: u64 },

    #[error("tolerance must be a positive finite number, got {0}")]
    BadTolerance(f64),

    #[error("grid must be non-empty and strictly increasing")]
    BadGrid,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("csv output failed: {0}")]
    Csv(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid symbol {symbol:?} at position {position}")]
    InvalidSymbol { position: usize, symbol: char },

    #[error("symbol {symbol} does not fit an alphabet of size {alphabet_size}")]
    SymbolOutOfRange { symbol: u8, alphabet_size: usize },

    #[error("unsupported alphabet size {0} (expected 2 or 3)")]
    UnsupportedAlphabet(usize),

    #[error("operation requires a binary word")]
    NotBinary,

    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("malformed rational {0:?} (expected NUM/DEN or an integer)")]
    MalformedRational(String),

    #[error("malformed morphism literal: {0}")]
    MalformedMorphism(String),

    #[error("cannot compose: inner target alphabet {inner_target} != outer source alphabet {outer_source}")]
    AlphabetMismatch {
        inner_target: usize,
        outer_source: usize,
    },

    #[error("seed {seed} is not prolongable under the morphism")]
    NotProlongable { seed: u8 },

    #[error("block {block} at position {position} is not an image of the morphism")]
    UnparsableBlock { position: usize, block: Word },

    #[error("incidence matrix has no positive dominant eigenvalue")]
    DegenerateMatrix,

    #[error("index {index} out of range: {reason}")]
    IndexOutOfRange { index: usize, reason: &'static str },

    #[error("unknown recipe {0:?}")]
    UnknownRecipe(String),

    #[error("malformed continued fraction: {0}")]
    MalformedContinuedFraction(String),

    #[error("word is not good (rich and 14/5-free)")]
    NotGood,

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Rich words, repetition exponents and morphic constructions over small
//! alphabets, with certified backtracking searches.

pub mod acceptance;
pub mod eertree;
pub mod error;
pub mod morphism;
pub mod rational;
pub mod repetition;
pub mod richness;
pub mod search;
pub mod sturmian;
pub mod word;

pub use eertree::Eertree;
pub use error::{Error, Result};
pub use morphism::{delta, desubstitute, generate, Morphism, Recipe};
pub use rational::Rational;
pub use repetition::{
    exponent, is_alpha_free, is_cube_free, is_good, max_exponent_factor, smallest_period,
    RepetitionWitness,
};
pub use richness::{is_rich, richness_report, RichnessReport};
pub use word::{Alphabet, Symbol, Word};

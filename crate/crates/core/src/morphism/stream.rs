use std::fmt;
use std::str::FromStr;

use super::Morphism;
use crate::error::{Error, Result};
use crate::sturmian::{characteristic_prefix, ContinuedFraction};
use crate::word::{Symbol, Word};

/// Infinite words reachable as limits of morphism iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    /// `f(h^ω(0))`
    Fh,
    /// `f(g(h^ω(0)))`
    Fgh,
    /// `h^ω(0)`
    H,
    /// `ξ^ω(0)`
    Xi,
    /// `η(ξ^ω(0))`
    EtaXi,
    /// The characteristic word of a slope.
    Characteristic(ContinuedFraction),
}

impl FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Recipe> {
        match s.to_ascii_uppercase().as_str() {
            "FH" => Ok(Recipe::Fh),
            "FGH" => Ok(Recipe::Fgh),
            "H" => Ok(Recipe::H),
            "XI" => Ok(Recipe::Xi),
            "ETAXI" | "ETA-XI" => Ok(Recipe::EtaXi),
            "CHAR" | "CALPHA" => Ok(Recipe::Characteristic(ContinuedFraction::paper_slope())),
            _ => Err(Error::UnknownRecipe(s.to_string())),
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Fh => f.write_str("FH"),
            Recipe::Fgh => f.write_str("FGH"),
            Recipe::H => f.write_str("H"),
            Recipe::Xi => f.write_str("XI"),
            Recipe::EtaXi => f.write_str("ETAXI"),
            Recipe::Characteristic(cf) => write!(f, "CHAR{cf}"),
        }
    }
}

/// Lazily extended prefix of a recipe's infinite word. Every call returns a
/// prefix of the same infinite word, so results are nested.
#[derive(Debug, Clone)]
pub struct MorphicStream {
    recipe: Recipe,
    cached: Word,
}

impl MorphicStream {
    pub fn new(recipe: Recipe) -> MorphicStream {
        let cached = Word::empty(match recipe {
            Recipe::H => crate::word::Alphabet::Ternary,
            _ => crate::word::Alphabet::Binary,
        });
        MorphicStream { recipe, cached }
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    /// Snapshot of the first `len` symbols.
    pub fn prefix(&mut self, len: usize) -> Word {
        if self.cached.len() < len {
            let target = len.max(2 * self.cached.len());
            self.cached = compute(&self.recipe, target);
        }
        self.cached.prefix(len)
    }
}

fn compute(recipe: &Recipe, len: usize) -> Word {
    // Every morphism applied after the fixed point is non-erasing, so a
    // fixed-point prefix of length `len` always yields enough symbols.
    let seed_len = len.max(2);
    let fixed = |m: Morphism| {
        m.fixed_point_prefix(Symbol::ZERO, seed_len)
            .expect("registered seeds are prolongable")
    };
    let word = match recipe {
        Recipe::H => fixed(Morphism::h()),
        Recipe::Xi => fixed(Morphism::xi()),
        Recipe::Fh => Morphism::f().apply(&fixed(Morphism::h())).expect("ternary source"),
        Recipe::Fgh => {
            let gh = Morphism::g().apply(&fixed(Morphism::h())).expect("ternary source");
            Morphism::f().apply(&gh).expect("ternary source")
        }
        Recipe::EtaXi => Morphism::eta().apply(&fixed(Morphism::xi())).expect("binary source"),
        Recipe::Characteristic(cf) => characteristic_prefix(cf, len),
    };
    word.prefix(len)
}

/// The first `len` symbols of the recipe's infinite word.
pub fn generate(recipe: &Recipe, len: usize) -> Word {
    compute(recipe, len)
}

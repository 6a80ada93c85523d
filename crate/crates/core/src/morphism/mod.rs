//! Morphisms on Σ₂ and Σ₃: application, composition, fixed points, the
//! first-difference map and block de-substitution.

mod incidence;
mod stream;

pub use incidence::{incidence_analysis, IncidenceAnalysis};
pub use stream::{generate, MorphicStream, Recipe};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// A map from letters of the source alphabet to words over the target
/// alphabet, extended to words by concatenation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    name: String,
    source: Alphabet,
    target: Alphabet,
    images: Vec<Vec<u8>>,
}

impl Morphism {
    /// Builds a morphism after checking every image is over `target`.
    pub fn new(
        name: impl Into<String>,
        source: Alphabet,
        target: Alphabet,
        images: &[&str],
    ) -> Result<Morphism> {
        if images.len() != source.size() {
            return Err(Error::MalformedMorphism(format!(
                "expected {} images, got {}",
                source.size(),
                images.len()
            )));
        }
        let images = images
            .iter()
            .map(|img| Word::parse_in(target, img).map(Word::into_vec))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            name: name.into(),
            source,
            target,
            images,
        })
    }

    fn registered(name: &str, source: Alphabet, target: Alphabet, images: &[&str]) -> Morphism {
        Morphism::new(name, source, target, images).expect("registered morphisms are well formed")
    }

    pub fn f() -> Morphism {
        Morphism::registered("f", Alphabet::Ternary, Alphabet::Binary, &["0", "01", "011"])
    }

    pub fn g() -> Morphism {
        Morphism::registered(
            "g",
            Alphabet::Ternary,
            Alphabet::Ternary,
            &["011", "0121", "012121"],
        )
    }

    pub fn h() -> Morphism {
        Morphism::registered("h", Alphabet::Ternary, Alphabet::Ternary, &["01", "02", "022"])
    }

    /// The factor of `g` through `h`: `g = g_tilde ∘ h`.
    pub fn g_tilde() -> Morphism {
        Morphism::registered("g~", Alphabet::Ternary, Alphabet::Ternary, &["01", "1", "21"])
    }

    pub fn lambda() -> Morphism {
        Morphism::registered("lambda", Alphabet::Ternary, Alphabet::Binary, &["0", "11", "101"])
    }

    pub fn mu() -> Morphism {
        Morphism::registered(
            "mu",
            Alphabet::Ternary,
            Alphabet::Binary,
            &["01111", "01110111", "0111011110111"],
        )
    }

    pub fn xi() -> Morphism {
        Morphism::registered("xi", Alphabet::Binary, Alphabet::Binary, &["011", "01"])
    }

    pub fn eta() -> Morphism {
        Morphism::registered("eta", Alphabet::Binary, Alphabet::Binary, &["011", "1"])
    }

    pub fn xi_bar() -> Morphism {
        Morphism::registered("xi-bar", Alphabet::Binary, Alphabet::Binary, &["01", "001"])
    }

    pub fn eta_bar() -> Morphism {
        Morphism::registered("eta-bar", Alphabet::Binary, Alphabet::Binary, &["0", "001"])
    }

    pub fn identity(alphabet: Alphabet) -> Morphism {
        Morphism {
            name: "id".into(),
            source: alphabet,
            target: alphabet,
            images: (0..alphabet.size() as u8).map(|s| vec![s]).collect(),
        }
    }

    /// Every named morphism, in a fixed order.
    pub fn registry() -> Vec<Morphism> {
        vec![
            Morphism::f(),
            Morphism::g(),
            Morphism::h(),
            Morphism::g_tilde(),
            Morphism::lambda(),
            Morphism::mu(),
            Morphism::xi(),
            Morphism::eta(),
            Morphism::xi_bar(),
            Morphism::eta_bar(),
            Morphism::identity(Alphabet::Binary),
            Morphism::identity(Alphabet::Ternary),
        ]
    }

    pub fn by_name(name: &str) -> Option<Morphism> {
        match name {
            "id2" => Some(Morphism::identity(Alphabet::Binary)),
            "id3" | "id" => Some(Morphism::identity(Alphabet::Ternary)),
            _ => Morphism::registry().into_iter().find(|m| m.name == name),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Morphism {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> Alphabet {
        self.source
    }

    pub fn target(&self) -> Alphabet {
        self.target
    }

    pub fn image(&self, letter: Symbol) -> Word {
        Word::from_raw(self.target, self.images[letter.value() as usize].clone())
    }

    pub fn images(&self) -> Vec<Word> {
        self.source.symbols().map(|a| self.image(a)).collect()
    }

    pub(crate) fn image_slice(&self, letter: u8) -> &[u8] {
        &self.images[letter as usize]
    }

    /// Block codes: every image starts with 0, contains no other 0, and the
    /// images are pairwise distinct. Such a morphism is injective and its
    /// images are parsed uniquely at the 0s.
    pub fn is_block_code(&self) -> bool {
        let shaped = self
            .images
            .iter()
            .all(|img| img.first() == Some(&0) && !img[1..].contains(&0));
        let distinct = self
            .images
            .iter()
            .enumerate()
            .all(|(i, a)| self.images[..i].iter().all(|b| a != b));
        shaped && distinct
    }

    pub fn apply(&self, word: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for &s in word.as_slice() {
            let image = self.images.get(s as usize).ok_or(Error::SymbolOutOfRange {
                symbol: s,
                alphabet_size: self.source.size(),
            })?;
            out.extend_from_slice(image);
        }
        Ok(Word::from_raw(self.target, out))
    }

    pub(crate) fn apply_slice(&self, symbols: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(symbols.len() * 2);
        for &s in symbols {
            out.extend_from_slice(&self.images[s as usize]);
        }
        out
    }

    /// `self` applied `n` times.
    pub fn iterate(&self, n: usize, word: &Word) -> Result<Word> {
        if n > 1 && self.source != self.target {
            return Err(Error::AlphabetMismatch {
                inner_target: self.target.size(),
                outer_source: self.source.size(),
            });
        }
        let mut current = word.clone();
        for _ in 0..n {
            current = self.apply(&current)?;
        }
        Ok(current)
    }

    /// `outer ∘ inner`: first `inner`, then `outer`.
    pub fn compose(outer: &Morphism, inner: &Morphism) -> Result<Morphism> {
        if inner.target != outer.source {
            return Err(Error::AlphabetMismatch {
                inner_target: inner.target.size(),
                outer_source: outer.source.size(),
            });
        }
        Ok(Morphism {
            name: format!("{}.{}", outer.name, inner.name),
            source: inner.source,
            target: outer.target,
            images: inner.images.iter().map(|img| outer.apply_slice(img)).collect(),
        })
    }

    /// Letterwise equality of the two maps (names are ignored).
    pub fn same_map(&self, other: &Morphism) -> bool {
        self.source == other.source && self.target == other.target && self.images == other.images
    }

    /// First `len` symbols of the fixed point starting with `seed`.
    pub fn fixed_point_prefix(&self, seed: Symbol, len: usize) -> Result<Word> {
        let s = seed.value();
        let image = self.images.get(s as usize).ok_or(Error::NotProlongable { seed: s })?;
        if self.source != self.target || image.first() != Some(&s) || image.len() < 2 {
            return Err(Error::NotProlongable { seed: s });
        }
        let mut current = vec![s];
        while current.len() < len {
            let mut next = Vec::with_capacity(len.min(current.len() * 4));
            for &x in &current {
                next.extend_from_slice(&self.images[x as usize]);
                if next.len() >= len {
                    break;
                }
            }
            if next.len() <= current.len() {
                // Only the seed letter grows and the rest erases: finite fixed point.
                return Err(Error::NotProlongable { seed: s });
            }
            current = next;
        }
        current.truncate(len);
        Ok(Word::from_raw(self.target, current))
    }

    /// Parses `name: 0->image,1->image[,2->image]`.
    pub fn parse_literal(text: &str) -> Result<Morphism> {
        let bad = |msg: &str| Error::MalformedMorphism(format!("{msg}: {text:?}"));
        let (name, body) = text.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(bad("empty name"));
        }
        let mut images: Vec<Option<Vec<u8>>> = vec![None; 3];
        let mut count = 0;
        for entry in body.split(',') {
            let (letter, image) = entry.trim().split_once("->").ok_or_else(|| bad("missing '->'"))?;
            let letter: usize = match letter.trim() {
                "0" => 0,
                "1" => 1,
                "2" => 2,
                _ => return Err(bad("letters must be 0, 1 or 2")),
            };
            let image = image.trim();
            if image.is_empty() || image.contains(char::is_whitespace) {
                return Err(bad("images must be nonempty digit strings"));
            }
            let word = Word::ternary(image)?;
            if images[letter].replace(word.into_vec()).is_some() {
                return Err(bad("duplicate letter"));
            }
            count += 1;
        }
        let source = Alphabet::from_size(count).map_err(|_| bad("need 2 or 3 letters"))?;
        let images: Vec<Vec<u8>> = images
            .into_iter()
            .take(count)
            .collect::<Option<_>>()
            .ok_or_else(|| bad("letters must be consecutive from 0"))?;
        let all: Vec<u8> = images.iter().flatten().copied().collect();
        let target = Alphabet::smallest_for(&all)?;
        Ok(Morphism {
            name: name.to_string(),
            source,
            target,
            images,
        })
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.name)?;
        for (i, img) in self.images().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}->{img}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Morphism {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// First differences mod 2: entry `i` is `w[i] + w[i+1] mod 2`.
pub fn delta(word: &Word) -> Result<Word> {
    if word.alphabet() != Alphabet::Binary {
        return Err(Error::NotBinary);
    }
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(Word::from_raw(
        Alphabet::Binary,
        word.as_slice().windows(2).map(|p| p[0] ^ p[1]).collect(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Desubstitution {
    pub core_preimage: Word,
    pub dropped_prefix: usize,
    pub dropped_suffix: usize,
}

/// Parses `word` into images of a block-code morphism.
///
/// Symbols before the first 0 are dropped. The final block is kept when it
/// is an image and dropped when it is only a proper prefix of one; every
/// other block must be an image.
pub fn desubstitute(word: &Word, morphism: &Morphism) -> Result<Desubstitution> {
    if !morphism.is_block_code() {
        return Err(Error::MalformedMorphism(format!(
            "{} is not a 0-delimited block code",
            morphism.name
        )));
    }
    let symbols = word.as_slice();
    let Some(first_zero) = symbols.iter().position(|&s| s == 0) else {
        return Ok(Desubstitution {
            core_preimage: Word::empty(morphism.source),
            dropped_prefix: symbols.len(),
            dropped_suffix: 0,
        });
    };
    let lookup = |block: &[u8]| {
        morphism
            .images
            .iter()
            .position(|img| img.as_slice() == block)
            .map(|i| i as u8)
    };

    let mut preimage = Vec::new();
    let mut start = first_zero;
    let mut dropped_suffix = 0;
    while start < symbols.len() {
        let end = symbols[start + 1..]
            .iter()
            .position(|&s| s == 0)
            .map_or(symbols.len(), |i| start + 1 + i);
        let block = &symbols[start..end];
        let is_last = end == symbols.len();
        match lookup(block) {
            Some(letter) => preimage.push(letter),
            None if is_last && morphism.images.iter().any(|img| img.starts_with(block)) => {
                dropped_suffix = block.len();
            }
            None => {
                return Err(Error::UnparsableBlock {
                    position: start,
                    block: Word::from_raw(word.alphabet(), block.to_vec()),
                })
            }
        }
        start = end;
    }
    Ok(Desubstitution {
        core_preimage: Word::from_raw(morphism.source, preimage),
        dropped_prefix: first_zero,
        dropped_suffix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Word {
        Word::ternary(s).unwrap()
    }

    fn b(s: &str) -> Word {
        Word::binary(s).unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(Morphism::f().apply(&t("011")).unwrap(), b("00101"));
        assert_eq!(Morphism::g().apply(&t("0")).unwrap(), t("011"));
        for m in Morphism::registry() {
            let empty = Word::empty(m.source());
            assert!(m.apply(&empty).unwrap().is_empty());
        }
        assert!(Morphism::xi().apply(&t("2")).is_err());
    }

    #[test]
    fn compose_examples() {
        let g = Morphism::compose(&Morphism::g_tilde(), &Morphism::h()).unwrap();
        assert!(g.same_map(&Morphism::g()));
        let left = Morphism::compose(&Morphism::lambda(), &Morphism::h()).unwrap();
        let right = Morphism::compose(&Morphism::xi(), &Morphism::lambda()).unwrap();
        assert!(left.same_map(&right));
        let id_f = Morphism::compose(&Morphism::identity(Alphabet::Binary), &Morphism::f()).unwrap();
        assert!(id_f.same_map(&Morphism::f()));
        assert!(matches!(
            Morphism::compose(&Morphism::xi(), &Morphism::h()),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn mu_factors_through_eta_xi_lambda() {
        let xi_lambda = Morphism::compose(&Morphism::xi(), &Morphism::lambda()).unwrap();
        let mu = Morphism::compose(&Morphism::eta(), &xi_lambda).unwrap();
        assert!(mu.same_map(&Morphism::mu()));
    }

    #[test]
    fn fixed_point_examples() {
        let h = Morphism::h();
        // h(0)=01, h(01)=0102, h(0102)=010201022
        assert_eq!(h.fixed_point_prefix(Symbol::ZERO, 7).unwrap(), t("0102010"));
        assert_eq!(h.fixed_point_prefix(Symbol::ZERO, 2).unwrap(), t("01"));
        assert_eq!(Morphism::xi().fixed_point_prefix(Symbol::ZERO, 3).unwrap(), b("011"));
        assert!(matches!(
            h.fixed_point_prefix(Symbol::ONE, 5),
            Err(Error::NotProlongable { seed: 1 })
        ));
        assert!(Morphism::f().fixed_point_prefix(Symbol::ZERO, 5).is_err());
    }

    #[test]
    fn fixed_point_matches_iteration() {
        let h = Morphism::h();
        let h6 = h.iterate(6, &t("0")).unwrap();
        assert_eq!(h.fixed_point_prefix(Symbol::ZERO, h6.len()).unwrap(), h6);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&b("00")).unwrap(), b("0"));
        assert_eq!(delta(&b("0110")).unwrap(), b("101"));
        assert_eq!(Morphism::lambda().apply(&t("2")).unwrap(), b("101"));
        assert_eq!(delta(&b("001010")).unwrap(), b("01111"));
        assert_eq!(delta(&b("")), Err(Error::EmptyWord));
        assert_eq!(delta(&t("012")), Err(Error::NotBinary));
    }

    #[test]
    fn desubstitute_examples() {
        let d = desubstitute(&b("00101"), &Morphism::f()).unwrap();
        assert_eq!((d.core_preimage, d.dropped_prefix, d.dropped_suffix), (t("011"), 0, 0));

        let d = desubstitute(&t("01022"), &Morphism::h()).unwrap();
        assert_eq!((d.core_preimage, d.dropped_prefix, d.dropped_suffix), (t("02"), 0, 0));

        match desubstitute(&t("0120110"), &Morphism::g()) {
            Err(Error::UnparsableBlock { position, block }) => {
                assert_eq!(position, 0);
                assert_eq!(block, t("012"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn desubstitute_trims_ragged_edges() {
        // leading "22" dropped, trailing "012" is a proper prefix of g(1)
        let d = desubstitute(&t("22011012"), &Morphism::g()).unwrap();
        assert_eq!(d.core_preimage, t("0"));
        assert_eq!((d.dropped_prefix, d.dropped_suffix), (2, 3));
        let d = desubstitute(&t("222"), &Morphism::h()).unwrap();
        assert!(d.core_preimage.is_empty());
        assert!(desubstitute(&t("0101"), &Morphism::g_tilde()).is_err());
    }

    #[test]
    fn block_codes() {
        assert!(Morphism::f().is_block_code());
        assert!(Morphism::g().is_block_code());
        assert!(Morphism::h().is_block_code());
        assert!(!Morphism::g_tilde().is_block_code());
        assert!(!Morphism::eta().is_block_code());
    }

    #[test]
    fn literal_round_trip() {
        let m = Morphism::parse_literal("h: 0->01,1->02,2->022").unwrap();
        assert!(m.same_map(&Morphism::h()));
        assert_eq!(m.to_string(), "h: 0->01,1->02,2->022");
        let xi = Morphism::parse_literal("xi:0->011, 1->01").unwrap();
        assert!(xi.same_map(&Morphism::xi()));
        for bad in ["h 0->01", ": 0->1,1->0", "h: 0->01,0->02", "h: 0->01,2->02", "h: 0->", "h: 0->0a,1->1"] {
            assert!(Morphism::parse_literal(bad).is_err(), "{bad}");
        }
    }
}

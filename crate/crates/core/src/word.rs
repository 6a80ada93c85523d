//! Finite words over the binary and ternary alphabets.
//!
//! A [`Word`] is an immutable sequence of symbols together with the
//! alphabet it lives in. The interchange format is the ASCII digit string
//! (`"0120"`), one word per line in files.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::io::{self, BufRead, Write};
use std::ops::Range;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A letter of Σ₂ or Σ₃, stored as its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

impl Symbol {
    pub const ZERO: Symbol = Symbol(0);
    pub const ONE: Symbol = Symbol(1);
    pub const TWO: Symbol = Symbol(2);

    pub fn new(value: u8, alphabet: Alphabet) -> Result<Symbol> {
        if (value as usize) < alphabet.size() {
            Ok(Symbol(value))
        } else {
            Err(Error::SymbolOutOfRange {
                symbol: value,
                alphabet_size: alphabet.size(),
            })
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn to_char(self) -> char {
        (b'0' + self.0) as char
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Alphabet {
    Binary,
    Ternary,
}

impl Alphabet {
    pub fn size(self) -> usize {
        match self {
            Alphabet::Binary => 2,
            Alphabet::Ternary => 3,
        }
    }

    pub fn from_size(size: usize) -> Result<Alphabet> {
        match size {
            2 => Ok(Alphabet::Binary),
            3 => Ok(Alphabet::Ternary),
            other => Err(Error::UnsupportedAlphabet(other)),
        }
    }

    /// Smallest supported alphabet containing every symbol of `symbols`.
    pub fn smallest_for(symbols: &[u8]) -> Result<Alphabet> {
        match symbols.iter().copied().max() {
            None | Some(0) | Some(1) => Ok(Alphabet::Binary),
            Some(2) => Ok(Alphabet::Ternary),
            Some(s) => Err(Error::SymbolOutOfRange {
                symbol: s,
                alphabet_size: 3,
            }),
        }
    }

    pub fn symbols(self) -> impl Iterator<Item = Symbol> {
        (0..self.size() as u8).map(Symbol)
    }
}

/// A finite word. Equality, hashing and ordering look only at the symbols,
/// so the same digits over Σ₂ and Σ₃ compare equal; ordering is lexicographic.
#[derive(Clone)]
pub struct Word {
    symbols: Vec<u8>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Word> {
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= alphabet.size()) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad,
                alphabet_size: alphabet.size(),
            });
        }
        Ok(Word { symbols, alphabet })
    }

    /// Caller guarantees every symbol is below `alphabet.size()`.
    pub(crate) fn from_raw(alphabet: Alphabet, symbols: Vec<u8>) -> Word {
        debug_assert!(symbols.iter().all(|&s| (s as usize) < alphabet.size()));
        Word { symbols, alphabet }
    }

    pub fn empty(alphabet: Alphabet) -> Word {
        Word {
            symbols: Vec::new(),
            alphabet,
        }
    }

    pub fn parse_in(alphabet: Alphabet, text: &str) -> Result<Word> {
        let symbols = text
            .chars()
            .enumerate()
            .map(|(position, c)| match c.to_digit(10) {
                Some(d) if (d as usize) < alphabet.size() => Ok(d as u8),
                Some(d) if d < 10 => Err(Error::SymbolOutOfRange {
                    symbol: d as u8,
                    alphabet_size: alphabet.size(),
                }),
                _ => Err(Error::InvalidSymbol { position, symbol: c }),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word { symbols, alphabet })
    }

    pub fn binary(text: &str) -> Result<Word> {
        Word::parse_in(Alphabet::Binary, text)
    }

    pub fn ternary(text: &str) -> Result<Word> {
        Word::parse_in(Alphabet::Ternary, text)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.symbols
    }

    pub fn symbol(&self, index: usize) -> Option<Symbol> {
        self.symbols.get(index).map(|&s| Symbol(s))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols.iter().map(|&s| Symbol(s))
    }

    /// Same symbols viewed over a (weakly) larger alphabet.
    pub fn widen(&self, alphabet: Alphabet) -> Result<Word> {
        Word::new(alphabet, self.symbols.clone())
    }

    pub fn factor(&self, range: Range<usize>) -> Word {
        Word::from_raw(self.alphabet, self.symbols[range].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.factor(0..len.min(self.len()))
    }

    pub fn suffix(&self, len: usize) -> Word {
        let n = self.len();
        self.factor(n - len.min(n)..n)
    }

    /// Concatenation; the result lives in the larger of the two alphabets.
    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        Word::from_raw(self.alphabet.max(other.alphabet), symbols)
    }

    pub fn with_symbol(&self, symbol: Symbol) -> Result<Word> {
        let symbol = Symbol::new(symbol.0, self.alphabet)?;
        let mut symbols = self.symbols.clone();
        symbols.push(symbol.0);
        Ok(Word::from_raw(self.alphabet, symbols))
    }

    pub fn power(&self, exponent: usize) -> Word {
        Word::from_raw(self.alphabet, self.symbols.repeat(exponent))
    }

    pub fn reverse(&self) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Word::from_raw(self.alphabet, symbols)
    }

    /// Exchanges 0 and 1. Only defined on binary words.
    pub fn complement(&self) -> Result<Word> {
        if self.alphabet != Alphabet::Binary {
            return Err(Error::NotBinary);
        }
        Ok(Word::from_raw(
            Alphabet::Binary,
            self.symbols.iter().map(|&s| 1 - s).collect(),
        ))
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.symbols)
    }

    pub fn count(&self, symbol: Symbol) -> usize {
        self.symbols.iter().filter(|&&s| s == symbol.0).count()
    }

    pub fn contains_factor(&self, factor: &Word) -> bool {
        contains_factor(&self.symbols, &factor.symbols)
    }

    pub fn find_factor(&self, factor: &Word) -> Option<usize> {
        find_factor(&self.symbols, &factor.symbols)
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.symbols.starts_with(&other.symbols)
    }

    pub fn ends_with(&self, other: &Word) -> bool {
        self.symbols.ends_with(&other.symbols)
    }

    /// All distinct factors of length `n`; `{""}` for `n = 0`, empty when `n > |w|`.
    pub fn distinct_factors(&self, n: usize) -> BTreeSet<Word> {
        if n == 0 {
            return BTreeSet::from([Word::empty(self.alphabet)]);
        }
        if n > self.len() {
            return BTreeSet::new();
        }
        self.symbols
            .windows(n)
            .map(|w| Word::from_raw(self.alphabet, w.to_vec()))
            .collect()
    }

    /// Whether `other` is a rotation of `self`.
    pub fn is_conjugate_of(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let doubled = [other.symbols.as_slice(), other.symbols.as_slice()].concat();
        contains_factor(&doubled, &self.symbols)
    }

    /// Whether the word is not an integer power of a shorter word.
    pub fn is_primitive(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let doubled = [self.symbols.as_slice(), self.symbols.as_slice()].concat();
        find_factor(&doubled[1..2 * n - 1], &self.symbols).is_none()
    }
}

pub(crate) fn is_palindrome(symbols: &[u8]) -> bool {
    symbols.iter().eq(symbols.iter().rev())
}

pub(crate) fn find_factor(haystack: &[u8], needle: &[u8]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    haystack.windows(needle.len()).position(|w| w == needle)
}

pub(crate) fn contains_factor(haystack: &[u8], needle: &[u8]) -> bool {
    find_factor(haystack, needle).is_some()
}

impl PartialEq for Word {
    fn eq(&self, other: &Word) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.symbols.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.symbols.cmp(&other.symbols)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: String = self.symbols.iter().map(|&s| (b'0' + s) as char).collect();
        f.write_str(&text)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses into the smallest alphabet that holds every digit.
    fn from_str(text: &str) -> Result<Word> {
        let ternary = Word::ternary(text)?;
        let alphabet = Alphabet::smallest_for(&ternary.symbols)?;
        Ok(Word::from_raw(alphabet, ternary.symbols))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Reads one word per line. Blank lines are skipped; a trailing `\r` is tolerated.
pub fn read_words<R: BufRead>(reader: R, alphabet: Alphabet) -> io::Result<Vec<Word>> {
    let mut words = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.is_empty() {
            continue;
        }
        let word = Word::parse_in(alphabet, line)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
        words.push(word);
    }
    Ok(words)
}

pub fn write_words<'a, W: Write>(
    mut writer: W,
    words: impl IntoIterator<Item = &'a Word>,
) -> io::Result<()> {
    for word in words {
        writeln!(writer, "{}", word)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(w("").reverse(), w(""));
        assert_eq!(w("011").reverse(), w("110"));
        assert_eq!(w("0110").reverse(), w("0110"));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(w("01").complement().unwrap(), w("10"));
        assert_eq!(w("").complement().unwrap(), w(""));
        assert_eq!(w("0011").complement().unwrap(), w("1100"));
        assert_eq!(w("012").complement(), Err(Error::NotBinary));
    }

    #[test]
    fn distinct_factor_examples() {
        // windows of 0101: 01, 10, 01
        let got = w("0101").distinct_factors(2);
        assert_eq!(got, BTreeSet::from([w("01"), w("10")]));
        assert_eq!(w("0110").distinct_factors(0), BTreeSet::from([w("")]));
        let got = w("0120").distinct_factors(1);
        assert_eq!(got, BTreeSet::from([w("0"), w("1"), w("2")]));
        assert!(w("01").distinct_factors(3).is_empty());
    }

    #[test]
    fn parsing() {
        assert_eq!(w("0101").alphabet(), Alphabet::Binary);
        assert_eq!(w("0121").alphabet(), Alphabet::Ternary);
        assert!(matches!(
            Word::binary("012"),
            Err(Error::SymbolOutOfRange { symbol: 2, .. })
        ));
        assert!(matches!(
            "01x".parse::<Word>(),
            Err(Error::InvalidSymbol { position: 2, .. })
        ));
        assert!("013".parse::<Word>().is_err());
    }

    #[test]
    fn conjugacy_and_primitivity() {
        assert!(w("0010").is_conjugate_of(&w("1000")));
        assert!(!w("0011").is_conjugate_of(&w("0101")));
        assert!(w("0001").is_primitive());
        assert!(!w("0101").is_primitive());
        assert!(!w("000").is_primitive());
        assert!(w("0").is_primitive());
    }

    #[test]
    fn word_file_round_trip() {
        let words = vec![w("0110"), w("1"), w("000101")];
        let mut buf = Vec::new();
        write_words(&mut buf, &words).unwrap();
        assert_eq!(buf, b"0110\n1\n000101\n");
        let back = read_words(&buf[..], Alphabet::Binary).unwrap();
        assert_eq!(back, words);
        assert!(read_words(&b"01 1\n"[..], Alphabet::Binary).is_err());
    }
}

//! Palindromic richness predicates.
//!
//! A word of length n is rich when it has n distinct nonempty palindromic
//! factors. Equivalently, every prefix has a unioccurrent longest
//! palindromic suffix, which is exactly the "node created" signal of the
//! eertree.

use serde::Serialize;

use crate::eertree::Eertree;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RichnessReport {
    pub word_length: usize,
    pub distinct_palindromes: usize,
    pub defect: usize,
    /// 1-based length of the first prefix whose longest palindromic suffix
    /// was already present.
    pub first_defect_position: Option<usize>,
}

impl RichnessReport {
    pub fn is_rich(&self) -> bool {
        self.defect == 0
    }
}

pub fn richness_report(word: &Word) -> RichnessReport {
    let mut tree = Eertree::new(word.alphabet());
    let mut first_defect_position = None;
    for (i, &s) in word.as_slice().iter().enumerate() {
        if !tree.push_raw(s) && first_defect_position.is_none() {
            first_defect_position = Some(i + 1);
        }
    }
    let distinct_palindromes = tree.distinct_palindromes();
    RichnessReport {
        word_length: word.len(),
        distinct_palindromes,
        defect: word.len() - distinct_palindromes,
        first_defect_position,
    }
}

pub fn is_rich(word: &Word) -> bool {
    is_rich_slice(word.as_slice(), word.alphabet())
}

pub(crate) fn is_rich_slice(symbols: &[u8], alphabet: crate::word::Alphabet) -> bool {
    let mut tree = Eertree::new(alphabet);
    symbols.iter().all(|&s| tree.push_raw(s))
}

/// Shortest non-rich suffix of `word`, if the word is not rich but every
/// proper prefix is. Used to produce minimal witnesses.
pub fn shortest_nonrich_suffix(word: &Word) -> Option<Word> {
    (1..=word.len())
        .map(|len| word.suffix(len))
        .find(|suffix| !is_rich(suffix))
}

//! Empirical check that a good binary word factors as `f(hⁿ(wₙ))` or
//! `f(g(hⁿ(wₙ)))` up to a bounded prefix.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::{desubstitute, Morphism};
use crate::repetition::is_good;
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `f ∘ hⁿ`
    FH,
    /// `f ∘ g ∘ hⁿ`
    FGH,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureRow {
    pub n: usize,
    pub fh_parses: bool,
    pub fgh_parses: bool,
    /// The branch that parses, preferring `FGH` if both do.
    pub branch: Option<Branch>,
    /// `wₙ` for the reported branch.
    pub residual: Option<Word>,
}

impl StructureRow {
    pub fn succeeded(&self) -> bool {
        self.branch.is_some()
    }
}

/// One de-substitution step. Only blocks closed by a following 0 are
/// parsed, since the last block of a finite prefix may be cut short. The
/// dropped prefix is bounded by the longest image, and an empty preimage
/// does not count as a parse.
fn strip(word: &Word, morphism: &Morphism) -> Option<Word> {
    let longest = morphism.images().iter().map(Word::len).max().unwrap_or(0);
    let last_zero = word.as_slice().iter().rposition(|&s| s == 0)?;
    let d = desubstitute(&word.prefix(last_zero), morphism).ok()?;
    (d.dropped_prefix < longest && !d.core_preimage.is_empty()).then_some(d.core_preimage)
}

fn chain(mut word: Word, first: Option<&Morphism>, h: &Morphism, n: usize) -> Option<Word> {
    if let Some(m) = first {
        word = strip(&word, m)?;
    }
    for _ in 0..n {
        word = strip(&word, h)?;
    }
    Some(word)
}

pub fn check_structure_theorem(word: &Word, n_max: usize) -> Result<Vec<StructureRow>> {
    if word.alphabet() != Alphabet::Binary && word.as_slice().iter().any(|&s| s > 1) {
        return Err(Error::NotBinary);
    }
    if !is_good(word) {
        return Err(Error::NotGood);
    }
    let (f, g, h) = (Morphism::f(), Morphism::g(), Morphism::h());
    let u = strip(word, &f);
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let fh = u.clone().and_then(|u| chain(u, None, &h, n));
        let fgh = u.clone().and_then(|u| chain(u, Some(&g), &h, n));
        let (branch, residual) = match (&fgh, &fh) {
            (Some(r), _) => (Some(Branch::FGH), Some(r.clone())),
            (None, Some(r)) => (Some(Branch::FH), Some(r.clone())),
            (None, None) => (None, None),
        };
        rows.push(StructureRow {
            n,
            fh_parses: fh.is_some(),
            fgh_parses: fgh.is_some(),
            branch,
            residual,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::{generate, Recipe};

    #[test]
    fn generated_words_parse_on_their_branch() {
        let rows = check_structure_theorem(&generate(&Recipe::Fgh, 2000), 3).unwrap();
        assert!(rows.iter().all(|r| r.branch == Some(Branch::FGH) && !r.fh_parses));
        let rows = check_structure_theorem(&generate(&Recipe::Fh, 2000), 3).unwrap();
        assert!(rows.iter().all(|r| r.branch == Some(Branch::FH) && !r.fgh_parses));
    }

    #[test]
    fn residual_reproduces_word() {
        let w = generate(&Recipe::Fh, 500);
        let rows = check_structure_theorem(&w, 2).unwrap();
        let (f, h) = (Morphism::f(), Morphism::h());
        let r = rows[1].residual.clone().unwrap();
        let rebuilt = f.apply(&h.iterate(2, &r).unwrap()).unwrap();
        assert!(w.contains_factor(&rebuilt));
    }

    #[test]
    fn not_good_is_rejected() {
        let w = Word::binary(&"01".repeat(50)).unwrap();
        assert_eq!(check_structure_theorem(&w, 3), Err(Error::NotGood));
    }
}

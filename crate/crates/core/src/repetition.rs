//! Periods, fractional exponents and α-freeness.
//!
//! Throughout, a word is α-free when it has no nonempty factor of exponent
//! greater than or equal to α. "14/5-free" therefore forbids every
//! repetition of exponent 2.8 or more, and cube-freeness is 3-freeness.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::richness::is_rich;
use crate::word::Word;

/// An occurrence `w[start..start + length]` with smallest period `period`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepetitionWitness {
    pub start: usize,
    pub period: usize,
    pub length: usize,
    pub exponent: Rational,
}

impl RepetitionWitness {
    fn new(start: usize, period: usize, length: usize) -> RepetitionWitness {
        RepetitionWitness {
            start,
            period,
            length,
            exponent: Rational::new(length as i64, period as i64),
        }
    }

    pub fn factor(&self, word: &Word) -> Word {
        word.factor(self.start..self.start + self.length)
    }

    /// Re-checks against `word`: in range, has the period, and the period is smallest.
    pub fn verify(&self, word: &Word) -> bool {
        if self.period == 0 || self.period > self.length || self.start + self.length > word.len() {
            return false;
        }
        let factor = &word.as_slice()[self.start..self.start + self.length];
        smallest_period_slice(factor) == self.period
            && self.exponent == Rational::new(self.length as i64, self.period as i64)
    }

    /// The root: the prefix of length `period` of the witnessed factor.
    pub fn root(&self, word: &Word) -> Word {
        word.factor(self.start..self.start + self.period)
    }
}

/// An exponent threshold with machine-sized numerator and denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Threshold {
    num: u64,
    den: u64,
}

impl Threshold {
    pub(crate) fn from_rational(alpha: &Rational) -> Option<Threshold> {
        let (num, den) = alpha.to_u64_pair()?;
        (num >= den && num < (1 << 32) && den < (1 << 32)).then_some(Threshold { num, den })
    }

    /// Whether a factor of `length` with period `period` reaches the threshold.
    #[inline]
    fn reached(self, length: usize, period: usize) -> bool {
        length as u64 * self.den >= period as u64 * self.num
    }

    /// Whether some suffix of `symbols` has exponent at least the threshold.
    pub(crate) fn suffix_violates(self, symbols: &[u8]) -> bool {
        let n = symbols.len();
        let last = match n.checked_sub(1) {
            Some(l) => l,
            None => return false,
        };
        let mut p = 1;
        while self.reached(n, p) {
            // Suffix of length p + r has period p; need p + r >= alpha p.
            let needed = ((p as u64 * self.num).div_ceil(self.den)) as usize - p;
            if needed == 0 {
                return true;
            }
            let mut r = 0;
            while r < needed && symbols[last - r] == symbols[last - r - p] {
                r += 1;
            }
            if r == needed {
                return true;
            }
            p += 1;
        }
        false
    }

    pub(crate) fn word_violates(self, symbols: &[u8]) -> bool {
        let n = symbols.len();
        let mut p = 1;
        while self.reached(n, p) {
            let mut run = 0;
            for j in 0..n - p {
                if symbols[j] == symbols[j + p] {
                    run += 1;
                    if self.reached(run + p, p) {
                        return true;
                    }
                } else {
                    run = 0;
                }
            }
            if self.reached(p, p) {
                return true;
            }
            p += 1;
        }
        false
    }
}

pub(crate) fn smallest_period_slice(symbols: &[u8]) -> usize {
    // Longest proper border via the prefix function.
    let n = symbols.len();
    let mut border = vec![0usize; n];
    for i in 1..n {
        let mut k = border[i - 1];
        while k > 0 && symbols[i] != symbols[k] {
            k = border[k - 1];
        }
        if symbols[i] == symbols[k] {
            k += 1;
        }
        border[i] = k;
    }
    n - border.last().copied().unwrap_or(0)
}

pub fn smallest_period(word: &Word) -> Result<usize> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(smallest_period_slice(word.as_slice()))
}

pub fn exponent(word: &Word) -> Result<Rational> {
    let p = smallest_period(word)?;
    Ok(Rational::new(word.len() as i64, p as i64))
}

/// Calls `visit(start, period, length)` for every maximal factor with
/// period `period` that is longer than `period`.
fn for_each_run(symbols: &[u8], mut visit: impl FnMut(usize, usize, usize)) {
    let n = symbols.len();
    for p in 1..n {
        let mut run_start = None;
        for j in 0..n - p {
            if symbols[j] == symbols[j + p] {
                run_start.get_or_insert(j);
            } else if let Some(a) = run_start.take() {
                visit(a, p, j - a + p);
            }
        }
        if let Some(a) = run_start {
            visit(a, p, n - a);
        }
    }
}

fn compare_exponents(len_a: usize, per_a: usize, len_b: usize, per_b: usize) -> Ordering {
    (len_a as u128 * per_b as u128).cmp(&(len_b as u128 * per_a as u128))
}

/// The largest exponent among all nonempty factors, with a witness. Ties go
/// to the smallest start index, then the smallest period.
pub fn max_exponent_factor(word: &Word) -> Result<(Rational, RepetitionWitness)> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    // A single letter has exponent 1.
    let mut best = (0usize, 1usize, 1usize);
    for_each_run(word.as_slice(), |start, period, length| {
        let (b_start, b_period, b_length) = best;
        let better = match compare_exponents(length, period, b_length, b_period) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => (start, period) < (b_start, b_period),
        };
        if better {
            best = (start, period, length);
        }
    });
    let witness = RepetitionWitness::new(best.0, best.1, best.2);
    Ok((witness.exponent.clone(), witness))
}

/// True iff no nonempty factor has exponent `>= alpha`.
pub fn is_alpha_free(word: &Word, alpha: &Rational) -> bool {
    if word.is_empty() {
        return true;
    }
    match Threshold::from_rational(alpha) {
        Some(t) => !t.word_violates(word.as_slice()),
        None => {
            let (max, _) = max_exponent_factor(word).expect("nonempty");
            &max < alpha
        }
    }
}

/// True iff no factor ending at the last position has exponent `>= alpha`.
/// When the word minus its last symbol is already α-free this equals
/// `is_alpha_free(word, alpha)`.
pub fn suffix_extension_safe(word: &Word, alpha: &Rational) -> bool {
    let symbols = word.as_slice();
    if symbols.is_empty() {
        return true;
    }
    match Threshold::from_rational(alpha) {
        Some(t) => !t.suffix_violates(symbols),
        None => {
            let n = symbols.len();
            (1..=n).all(|len| {
                let suffix = word.factor(n - len..n);
                &exponent(&suffix).expect("nonempty") < alpha
            })
        }
    }
}

pub fn is_cube_free(word: &Word) -> bool {
    is_alpha_free(word, &Rational::from_integer(3))
}

/// Rich and 14/5-free.
pub fn is_good(word: &Word) -> bool {
    is_rich(word) && is_alpha_free(word, &Rational::fourteen_fifths())
}

/// Every maximal repetition (run) whose exponent is at least `min_exponent`,
/// reported with its smallest period. `min_exponent` must be at least 2.
pub fn maximal_repetitions(word: &Word, min_exponent: &Rational) -> Vec<RepetitionWitness> {
    assert!(
        min_exponent >= &Rational::from_integer(2),
        "runs below exponent 2 are not tracked"
    );
    let symbols = word.as_slice();
    let threshold = Threshold::from_rational(min_exponent);
    let mut out = Vec::new();
    for_each_run(symbols, |start, period, length| {
        let enough = match threshold {
            Some(t) => t.reached(length, period),
            None => Rational::new(length as i64, period as i64) >= *min_exponent,
        };
        if !enough {
            return;
        }
        // With length >= 2p, any smaller period divides p (Fine and Wilf).
        let factor = &symbols[start..start + length];
        let has_smaller = (1..period)
            .filter(|d| period % d == 0)
            .any(|d| factor.iter().zip(&factor[d..]).all(|(a, b)| a == b));
        if !has_smaller {
            out.push(RepetitionWitness::new(start, period, length));
        }
    });
    out.sort_by_key(|w| (w.start, w.period));
    out
}

/// Shortest suffix with exponent at least `alpha`, if any.
pub fn shortest_violating_suffix(word: &Word, alpha: &Rational) -> Option<Word> {
    let n = word.len();
    (1..=n)
        .map(|len| word.factor(n - len..n))
        .find(|suffix| &exponent(suffix).expect("nonempty") >= alpha)
}

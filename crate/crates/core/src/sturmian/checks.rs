//! Empirical checks on finite prefixes: Justin's period bound, the
//! repetition transfer through Δ, Rote factor complexity, and the
//! classification of square roots in characteristic words.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{exponents::sqrt2_bounds, ContinuedFraction, ConvergentTable, StandardWordFamily};
use crate::error::{Error, Result};
use crate::morphism::delta;
use crate::rational::Rational;
use crate::repetition::max_exponent_factor;
use crate::word::{Alphabet, Symbol, Word};

/// Length of the longest factor of `word` having `period` as a period.
pub fn longest_factor_with_period(word: &Word, period: usize) -> Result<usize> {
    if period == 0 || period > word.len() {
        return Err(Error::IndexOutOfRange {
            index: period,
            reason: "need 1 <= period <= |w|",
        });
    }
    let s = word.as_slice();
    let (mut best, mut run) = (0, 0);
    for j in 0..s.len() - period {
        if s[j] == s[j + period] {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    Ok(best + period)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JustinRow {
    pub k: usize,
    pub period: usize,
    pub expected: usize,
    pub got: usize,
    pub holds: bool,
}

/// Compares the longest factor of `prefix` with period `q_{k-2} + q_{k-1}`
/// against `2(q_{k-2} + q_{k-1}) + q_{k-1} - 2`.
pub fn justin_check(table: &ConvergentTable, k: usize, prefix: &Word) -> Result<JustinRow> {
    let q = |n: i64| {
        table.q_usize(n).ok_or(Error::IndexOutOfRange {
            index: k,
            reason: "convergent table too short",
        })
    };
    if k < 2 {
        return Err(Error::IndexOutOfRange {
            index: k,
            reason: "need k >= 2",
        });
    }
    let (q1, q2) = (q(k as i64 - 1)?, q(k as i64 - 2)?);
    let period = q1 + q2;
    let expected = 2 * period + q1 - 2;
    let got = longest_factor_with_period(prefix, period)?;
    Ok(JustinRow {
        k,
        period,
        expected,
        got,
        holds: got == expected,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferCounterexample {
    pub start: usize,
    pub period: usize,
    pub power: usize,
    pub tail: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub repetitions_checked: usize,
    pub counterexamples: Vec<TransferCounterexample>,
}

/// For every repetition `(x_i…x_{i+ℓ-1})^e x_i…x_{i+t-1}` of `x` with
/// `e >= 2` and `1 <= t <= ℓ`, checks that `Δ(x)` holds the repetition
/// `(y_i…y_{i+ℓ-1})^e y_i…y_{i+t-2}` and that its period block has an even
/// number of 1s. For `t = 1` the transferred tail is empty.
pub fn delta_repetition_transfer(x: &Word) -> Result<TransferReport> {
    if x.alphabet() != Alphabet::Binary {
        return Err(Error::NotBinary);
    }
    let mut report = TransferReport {
        repetitions_checked: 0,
        counterexamples: Vec::new(),
    };
    if x.len() < 3 {
        return Ok(report);
    }
    let y = delta(x)?;
    let (xs, ys) = (x.as_slice(), y.as_slice());
    let n = xs.len();
    for i in 0..n {
        for period in 1..=(n - i) / 2 {
            // Longest factor starting at i with this period.
            let mut reach = i + period;
            while reach < n && xs[reach] == xs[reach - period] {
                reach += 1;
            }
            let run = reach - i;
            for power in 2..=run / period {
                for tail in 1..=period {
                    if power * period + tail > run {
                        break;
                    }
                    report.repetitions_checked += 1;
                    let len_y = power * period + tail - 1;
                    let block = &ys[i..i + len_y];
                    let periodic = block.iter().zip(&block[period..]).all(|(a, b)| a == b);
                    let ones = ys[i..i + period].iter().filter(|&&s| s == 1).count();
                    if !periodic || ones % 2 != 0 {
                        report.counterexamples.push(TransferCounterexample {
                            start: i,
                            period,
                            power,
                            tail,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoteRow {
    pub n: usize,
    pub complexity: usize,
    /// When false the prefix is too short to demand `C(n) = 2n`; only
    /// `C(n) <= 2n` is checked.
    pub exact_required: bool,
    pub complement_closed: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoteReport {
    pub word_length: usize,
    pub rows: Vec<RoteRow>,
    pub passed: bool,
}

/// Minimum prefix length, per unit of `n_max`, before `C(n) = 2n` is required.
pub const ROTE_LENGTH_FACTOR: usize = 50;

/// Factor complexity `2n` and complement-closure of the length-`n` factors,
/// for `1 <= n <= n_max`.
pub fn rote_check(word: &Word, n_max: usize) -> Result<RoteReport> {
    if word.alphabet() != Alphabet::Binary {
        return Err(Error::NotBinary);
    }
    let exact_required = word.len() >= ROTE_LENGTH_FACTOR * n_max;
    let s = word.as_slice();
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let (complexity, complement_closed) = if n <= 64 {
            let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            let mut seen = HashSet::new();
            let mut v = 0u64;
            for (j, &b) in s.iter().enumerate() {
                v = ((v << 1) | b as u64) & mask;
                if j + 1 >= n {
                    seen.insert(v);
                }
            }
            let closed = seen.iter().all(|f| seen.contains(&(f ^ mask)));
            (seen.len(), closed)
        } else {
            let factors = word.distinct_factors(n);
            let closed = factors
                .iter()
                .all(|f| factors.contains(&f.complement().expect("binary")));
            (factors.len(), closed)
        };
        let count_ok = if exact_required {
            complexity == 2 * n
        } else {
            complexity <= 2 * n
        };
        rows.push(RoteRow {
            n,
            complexity,
            exact_required,
            complement_closed,
            passed: count_ok && complement_closed,
        });
    }
    let passed = rows.iter().all(|r| r.passed);
    Ok(RoteReport {
        word_length: word.len(),
        rows,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RootKind {
    /// Conjugate of `s_k`.
    Standard { k: usize },
    /// Conjugate of `s_{k,t}`.
    SemiStandard { k: usize, t: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootClassification {
    pub squares_found: usize,
    pub classified: Vec<(Word, RootKind)>,
    pub unclassified: Vec<Word>,
    /// 0-count odd in every `s_k` and even in every `s_{k,1}` of the family used.
    pub parity_holds: bool,
    /// Every root conjugate to a standard word has an odd number of 0s and
    /// every root conjugate to `s_{k,1}` an even number.
    pub root_parity_holds: bool,
    pub max_exponent: Rational,
    /// `max_exponent < 3 + √2`, decided with rational bounds on `√2`.
    pub below_critical_bound: bool,
}

impl RootClassification {
    pub fn passed(&self) -> bool {
        self.unclassified.is_empty()
            && self.parity_holds
            && self.root_parity_holds
            && self.below_critical_bound
    }
}

/// Primitive roots `z` of all squares `zz` occurring in `word`.
fn primitive_square_roots(word: &Word) -> (usize, BTreeSet<Word>) {
    let s = word.as_slice();
    let n = s.len();
    let mut squares = 0;
    let mut roots = BTreeSet::new();
    for period in 1..=n / 2 {
        let mut run = 0;
        for j in 0..n - period {
            if s[j] == s[j + period] {
                run += 1;
                if run >= period {
                    squares += 1;
                    let start = j + 1 - period;
                    let root = word.factor(start..start + period);
                    if root.is_primitive() {
                        roots.insert(root);
                    }
                }
            } else {
                run = 0;
            }
        }
    }
    (squares, roots)
}

/// Checks that every primitive square root in a prefix of `c_α` is a
/// conjugate of a standard or semi-standard word, together with the
/// parity facts and the critical-exponent bound `3 + √2`.
pub fn repetition_root_classification(
    word: &Word,
    cf: &ContinuedFraction,
) -> Result<RootClassification> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let family = StandardWordFamily::covering(cf, word.len());
    let zeros = |w: &Word| w.count(Symbol::ZERO);

    let mut candidates: Vec<(Word, RootKind)> = Vec::new();
    for (k, s) in family.words().iter().enumerate() {
        candidates.push((s.clone(), RootKind::Standard { k }));
    }
    let mut parity_holds = family.words().iter().all(|s| zeros(s) % 2 == 1);
    for k in 2..=family.n_max() {
        for t in 1..cf.digit(k) as usize {
            let semi = family.semi_standard(k, t)?;
            if t == 1 {
                parity_holds &= zeros(&semi) % 2 == 0;
            }
            candidates.push((semi, RootKind::SemiStandard { k, t }));
        }
    }

    let (squares_found, roots) = primitive_square_roots(word);
    let mut classified = Vec::new();
    let mut unclassified = Vec::new();
    for root in roots {
        match candidates.iter().find(|(c, _)| root.is_conjugate_of(c)) {
            Some((_, kind)) => classified.push((root, kind.clone())),
            None => unclassified.push(root),
        }
    }
    let root_parity_holds = classified.iter().all(|(root, kind)| match kind {
        RootKind::Standard { .. } => zeros(root) % 2 == 1,
        RootKind::SemiStandard { t: 1, .. } => zeros(root) % 2 == 0,
        RootKind::SemiStandard { .. } => true,
    });

    let (max_exponent, _) = max_exponent_factor(word)?;
    let (sqrt2_lo, _) = sqrt2_bounds(30);
    let below_critical_bound = max_exponent < Rational::from_integer(3) + sqrt2_lo;
    Ok(RootClassification {
        squares_found,
        classified,
        unclassified,
        parity_holds,
        root_parity_holds,
        max_exponent,
        below_critical_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sturmian::{characteristic_prefix, convergents};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn longest_period_examples() {
        assert_eq!(longest_factor_with_period(&w("0000"), 1).unwrap(), 4);
        assert_eq!(longest_factor_with_period(&w("01"), 2).unwrap(), 2);
        assert!(longest_factor_with_period(&w("01"), 3).is_err());
        // brute force on a c_α prefix for p = q0 + q1 = 5
        let alpha = ContinuedFraction::paper_slope();
        let prefix = characteristic_prefix(&alpha, 200);
        let s = prefix.as_slice();
        let mut brute = 0;
        for i in 0..s.len() {
            for j in i + 5..=s.len() {
                if (i..j - 5).all(|m| s[m] == s[m + 5]) {
                    brute = brute.max(j - i);
                }
            }
        }
        assert_eq!(brute, 12);
        assert_eq!(longest_factor_with_period(&prefix, 5).unwrap(), 12);
    }

    #[test]
    fn justin_at_k2() {
        let alpha = ContinuedFraction::paper_slope();
        let table = convergents(&alpha, 8);
        let prefix = characteristic_prefix(&alpha, 500);
        let row = justin_check(&table, 2, &prefix).unwrap();
        assert_eq!((row.period, row.expected, row.got), (5, 12, 12));
    }

    #[test]
    fn transfer_examples() {
        let r = delta_repetition_transfer(&w("0110110")).unwrap();
        assert!(r.counterexamples.is_empty());
        assert!(r.repetitions_checked >= 1);
        assert_eq!(delta(&w("0110110")).unwrap(), w("101101"));

        let r = delta_repetition_transfer(&w("0000")).unwrap();
        assert!(r.counterexamples.is_empty());
        // (0)^2 0 ... : period 1 with (e, t) in {(2,1), (3,1)}, starts 0 and 1 => 3 checks
        assert_eq!(r.repetitions_checked, 3);
        assert!(delta_repetition_transfer(&w("012")).is_err());
    }

    #[test]
    fn rote_rejects_periodic() {
        let periodic = Word::binary(&"01".repeat(200)).unwrap();
        let r = rote_check(&periodic, 2).unwrap();
        assert_eq!(r.rows[1].complexity, 2);
        assert!(!r.passed);
    }

    #[test]
    fn rote_short_prefix_only_bounds() {
        let r = rote_check(&w("0011"), 1).unwrap();
        assert!(!r.rows[0].exact_required);
        assert!(r.passed);
    }

    #[test]
    fn classify_small_examples() {
        let alpha = ContinuedFraction::paper_slope();
        let r = repetition_root_classification(&w("00010001"), &alpha).unwrap();
        assert!(r
            .classified
            .iter()
            .any(|(root, kind)| root == &w("0001") && *kind == RootKind::Standard { k: 1 }));
        assert!(r.passed());

        let prefix = characteristic_prefix(&alpha, 500);
        let r = repetition_root_classification(&prefix, &alpha).unwrap();
        assert!(r.passed(), "{r:?}");
        for (root, _) in r.classified.iter().filter(|(root, _)| root.len() == 5) {
            assert_eq!(root.count(Symbol::ZERO) % 2, 0);
        }
    }
}

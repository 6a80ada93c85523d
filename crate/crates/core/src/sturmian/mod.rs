//! Continued fractions, standard words and the repetition calculus of
//! characteristic Sturmian words.

mod checks;
mod exponents;

pub use checks::{
    delta_repetition_transfer, justin_check, longest_factor_with_period,
    repetition_root_classification, rote_check, JustinRow, RootClassification, RootKind,
    RoteReport, RoteRow, TransferCounterexample, TransferReport,
};
pub use exponents::{
    e_k, e_k_limit_bounds, sqrt2_bounds, sturmian_report, verify_q_identity, QIdentityReport,
    QIdentityRow, SturmianRow,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::word::{Alphabet, Word};

/// `[0; d₁, d₂, …]` stored as a finite preperiod followed by a repeating
/// period. The preperiod always starts with `d₀ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<ContinuedFraction> {
        let bad = |msg: &str| Error::MalformedContinuedFraction(msg.to_string());
        if preperiod.first() != Some(&0) {
            return Err(bad("d0 must be 0"));
        }
        if period.is_empty() {
            return Err(bad("period must be nonempty"));
        }
        if preperiod[1..].iter().chain(&period).any(|&d| d == 0) {
            return Err(bad("digits after d0 must be positive"));
        }
        Ok(ContinuedFraction { preperiod, period })
    }

    /// `[0; 4, 2, 2, 2, …]`, the slope `(3 - √2)/7`.
    pub fn paper_slope() -> ContinuedFraction {
        ContinuedFraction::new(vec![0, 4], vec![2]).expect("valid")
    }

    /// `[0; 1, 1, 1, …]`
    pub fn golden() -> ContinuedFraction {
        ContinuedFraction::new(vec![0], vec![1]).expect("valid")
    }

    pub fn digit(&self, i: usize) -> u64 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0;")?;
        let tail: Vec<String> = self.preperiod[1..].iter().map(u64::to_string).collect();
        let period: Vec<String> = self.period.iter().map(u64::to_string).collect();
        if tail.is_empty() {
            write!(f, "({})]", period.join(","))
        } else {
            write!(f, "{},({})]", tail.join(","), period.join(","))
        }
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Parses the `Display` form, e.g. `[0;4,(2)]` or `[0;(1)]`.
    fn from_str(s: &str) -> Result<ContinuedFraction> {
        let bad = || Error::MalformedContinuedFraction(s.to_string());
        let body = s.trim().strip_prefix("[0;").and_then(|b| b.strip_suffix(")]")).ok_or_else(bad)?;
        let (tail, period) = body.rsplit_once('(').ok_or_else(bad)?;
        let digits = |text: &str| -> Result<Vec<u64>> {
            text.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u64>().map_err(|_| bad()))
                .collect()
        };
        let mut preperiod = vec![0];
        preperiod.extend(digits(tail)?);
        ContinuedFraction::new(preperiod, digits(period)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergentRow {
    pub n: i64,
    #[serde(serialize_with = "ser_bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub q: BigInt,
}

pub(crate) fn ser_bigint<S: serde::Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Convergents `p_n / q_n` for `n = -2..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergentTable {
    pub rows: Vec<ConvergentRow>,
}

impl ConvergentTable {
    /// Highest `n` covered.
    pub fn n_max(&self) -> i64 {
        self.rows.last().map_or(-1, |r| r.n)
    }

    fn row(&self, n: i64) -> Option<&ConvergentRow> {
        usize::try_from(n + 2).ok().and_then(|i| self.rows.get(i))
    }

    pub fn p(&self, n: i64) -> Option<&BigInt> {
        self.row(n).map(|r| &r.p)
    }

    pub fn q(&self, n: i64) -> Option<&BigInt> {
        self.row(n).map(|r| &r.q)
    }

    pub fn q_usize(&self, n: i64) -> Option<usize> {
        use num_traits::ToPrimitive;
        self.q(n).and_then(|q| q.to_usize())
    }

    /// `gcd(p_n, q_n) = 1` for every `n >= 1` in the table.
    pub fn coprime(&self) -> bool {
        self.rows.iter().filter(|r| r.n >= 1).all(|r| r.p.gcd(&r.q).is_one())
    }

    /// Checks `q_{n-1}/q_n = [0; d_n, …, d_1]` for every `1 <= n <= n_max`.
    pub fn reversal_holds(&self, cf: &ContinuedFraction) -> bool {
        (1..=self.n_max()).all(|n| {
            let lhs = Rational::new(self.q(n - 1).unwrap().clone(), self.q(n).unwrap().clone());
            let digits: Vec<u64> = (1..=n as usize).rev().map(|i| cf.digit(i)).collect();
            lhs == evaluate_finite(&digits)
        })
    }
}

/// Value of `[0; a₁, …, a_m]`.
fn evaluate_finite(digits: &[u64]) -> Rational {
    let mut value = Rational::zero();
    for &d in digits.iter().rev() {
        value = Rational::one() / (Rational::from_integer(d) + value);
    }
    value
}

pub fn convergents(cf: &ContinuedFraction, n_max: usize) -> ConvergentTable {
    let mut rows = vec![
        ConvergentRow {
            n: -2,
            p: BigInt::zero(),
            q: BigInt::one(),
        },
        ConvergentRow {
            n: -1,
            p: BigInt::one(),
            q: BigInt::zero(),
        },
    ];
    for n in 0..=n_max {
        let d = BigInt::from(cf.digit(n));
        let (a, b) = (&rows[n], &rows[n + 1]);
        let p = &d * &b.p + &a.p;
        let q = &d * &b.q + &a.q;
        rows.push(ConvergentRow { n: n as i64, p, q });
    }
    ConvergentTable { rows }
}

/// Standard words `s_0, …, s_{n_max}` of a slope.
#[derive(Debug, Clone)]
pub struct StandardWordFamily {
    cf: ContinuedFraction,
    words: Vec<Word>,
}

impl StandardWordFamily {
    pub fn new(cf: &ContinuedFraction, n_max: usize) -> StandardWordFamily {
        let mut words = vec![Word::binary("0").expect("valid")];
        if n_max >= 1 {
            let mut s1 = vec![0u8; cf.digit(1) as usize - 1];
            s1.push(1);
            words.push(Word::new(Alphabet::Binary, s1).expect("binary"));
        }
        for n in 2..=n_max {
            let next = words[n - 1]
                .power(cf.digit(n) as usize)
                .concat(&words[n - 2]);
            words.push(next);
        }
        StandardWordFamily {
            cf: cf.clone(),
            words,
        }
    }

    /// Smallest family whose last word has at least `len` symbols.
    pub fn covering(cf: &ContinuedFraction, len: usize) -> StandardWordFamily {
        let mut family = StandardWordFamily::new(cf, 1);
        while family.words.last().expect("nonempty").len() < len || family.words.len() < 2 {
            let n = family.words.len();
            let next = family.words[n - 1]
                .power(cf.digit(n) as usize)
                .concat(&family.words[n - 2]);
            family.words.push(next);
        }
        family
    }

    pub fn n_max(&self) -> usize {
        self.words.len() - 1
    }

    pub fn standard(&self, n: usize) -> Option<&Word> {
        self.words.get(n)
    }

    /// `s_{n,t} = s_{n-1}^t s_{n-2}` for `n >= 2` and `1 <= t < d_n`.
    pub fn semi_standard(&self, n: usize, t: usize) -> Result<Word> {
        if n < 2 || n > self.n_max() {
            return Err(Error::IndexOutOfRange {
                index: n,
                reason: "semi-standard words need 2 <= n <= family size",
            });
        }
        if t == 0 || t as u64 >= self.cf.digit(n) {
            return Err(Error::IndexOutOfRange {
                index: t,
                reason: "need 1 <= t < d_n",
            });
        }
        Ok(self.words[n - 1].power(t).concat(&self.words[n - 2]))
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }
}

pub fn standard_word(cf: &ContinuedFraction, n: usize) -> Word {
    StandardWordFamily::new(cf, n).words.swap_remove(n)
}

pub fn semi_standard(cf: &ContinuedFraction, n: usize, t: usize) -> Result<Word> {
    StandardWordFamily::new(cf, n.max(2)).semi_standard(n, t)
}

/// First `len` symbols of the characteristic word `c_α`, read off the
/// standard words (each `s_n`, `n >= 1`, is a prefix of `s_{n+1}`).
pub fn characteristic_prefix(cf: &ContinuedFraction, len: usize) -> Word {
    if len == 0 {
        return Word::empty(Alphabet::Binary);
    }
    StandardWordFamily::covering(cf, len)
        .words
        .pop()
        .expect("nonempty")
        .prefix(len)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(cf: &ContinuedFraction, n: usize) -> Vec<u64> {
        let t = convergents(cf, n);
        (0..=n as i64)
            .map(|i| t.q(i).unwrap().try_into().unwrap())
            .collect()
    }

    /// Plain u64 recurrence, independent of the table builder.
    fn fib(n: usize) -> Vec<u64> {
        let mut v = vec![1u64, 1];
        while v.len() < n {
            let k = v.len();
            v.push(v[k - 1] + v[k - 2]);
        }
        v.truncate(n);
        v
    }

    #[test]
    fn convergent_examples() {
        let alpha = ContinuedFraction::paper_slope();
        assert_eq!(qs(&alpha, 4), vec![1, 4, 9, 22, 53]);
        assert_eq!(qs(&ContinuedFraction::golden(), 0), vec![1]);
        assert_eq!(qs(&ContinuedFraction::golden(), 9), fib(10));
        let t = convergents(&alpha, 30);
        assert!(t.coprime());
        assert!(t.reversal_holds(&alpha));
        assert_eq!(t.p(-2), Some(&BigInt::zero()));
        assert_eq!(t.q(-1), Some(&BigInt::zero()));
    }

    #[test]
    fn standard_word_examples() {
        let alpha = ContinuedFraction::paper_slope();
        assert_eq!(standard_word(&alpha, 1).to_string(), "0001");
        assert_eq!(standard_word(&alpha, 2).to_string(), "000100010");
        assert_eq!(standard_word(&alpha, 3).to_string(), "0001000100001000100001");
        assert_eq!(semi_standard(&alpha, 2, 1).unwrap().to_string(), "00010");
        assert!(semi_standard(&alpha, 2, 2).is_err());
        assert!(semi_standard(&alpha, 1, 1).is_err());
    }

    #[test]
    fn lengths_match_denominators() {
        let alpha = ContinuedFraction::paper_slope();
        let family = StandardWordFamily::new(&alpha, 12);
        let table = convergents(&alpha, 12);
        for n in 0..=12 {
            assert_eq!(family.standard(n).unwrap().len(), table.q_usize(n as i64).unwrap());
        }
        for n in 2..=12 {
            let semi = family.semi_standard(n, 1).unwrap();
            let expected = table.q_usize(n as i64 - 1).unwrap() + table.q_usize(n as i64 - 2).unwrap();
            assert_eq!(semi.len(), expected);
        }
    }

    #[test]
    fn characteristic_examples() {
        let alpha = ContinuedFraction::paper_slope();
        assert_eq!(characteristic_prefix(&alpha, 4).to_string(), "0001");
        assert_eq!(characteristic_prefix(&alpha, 9).to_string(), "000100010");
        assert!(characteristic_prefix(&alpha, 0).is_empty());
        let long = characteristic_prefix(&alpha, 1000);
        let family = StandardWordFamily::new(&alpha, 6);
        for s in &family.words()[1..] {
            assert!(long.starts_with(&s.prefix(1000)));
        }
    }

    #[test]
    fn continued_fraction_text() {
        let alpha = ContinuedFraction::paper_slope();
        assert_eq!(alpha.to_string(), "[0;4,(2)]");
        assert_eq!("[0;4,(2)]".parse::<ContinuedFraction>().unwrap(), alpha);
        assert_eq!("[0;(1)]".parse::<ContinuedFraction>().unwrap(), ContinuedFraction::golden());
        assert!("[0;4,(0)]".parse::<ContinuedFraction>().is_err());
        assert!(ContinuedFraction::new(vec![1], vec![2]).is_err());
    }
}

//! Exact rationals for exponents and thresholds.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator. Displays as `num/den`, including integers (`3/1`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Rational {
        let den = denominator.into();
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(numerator.into(), den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Rational {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        // Large convergents overflow f64 individually; divide in rational space first.
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Numerator and denominator as machine integers, when they fit.
    pub fn to_u64_pair(&self) -> Option<(u64, u64)> {
        Some((self.numer().to_u64()?, self.denom().to_u64()?))
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn fourteen_fifths() -> Rational {
        Rational::new(14, 5)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Rational {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `NUM/DEN` or a bare integer. Decimal notation is rejected.
    fn from_str(text: &str) -> Result<Rational, Error> {
        let bad = || Error::MalformedRational(text.to_string());
        let parse_int = |s: &str| -> Result<BigInt, Error> {
            let digits = s.strip_prefix('-').unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            s.parse::<BigInt>().map_err(|_| bad())
        };
        match text.split_once('/') {
            Some((num, den)) => {
                let num = parse_int(num)?;
                let den = parse_int(den)?;
                if den.is_zero() || den.is_negative() {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(num, den)))
            }
            None => Ok(Rational::from_integer(parse_int(text)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!("14/5".parse::<Rational>().unwrap(), Rational::new(14, 5));
        assert_eq!("28/10".parse::<Rational>().unwrap(), Rational::new(14, 5));
        assert_eq!("3".parse::<Rational>().unwrap(), Rational::from_integer(3));
        assert_eq!("7/3".parse::<Rational>().unwrap().to_string(), "7/3");
        assert_eq!(Rational::from_integer(3).to_string(), "3/1");
    }

    #[test]
    fn rejects_decimals_and_garbage() {
        for bad in ["2.8", "14/0", "14/-5", "", "/5", "1/", "a/b", "1 /2"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn ordering_is_exact() {
        let a = Rational::new(14, 5);
        let b = Rational::new(7, 3);
        let two = Rational::from_integer(2);
        assert!(a > b && b > two);
        // 13/5 vs 34/13: 169 < 170
        assert!(Rational::new(13, 5) < Rational::new(34, 13));
    }

    #[test]
    fn arithmetic() {
        let e = Rational::from_integer(2) + Rational::new(3, 5);
        assert_eq!(e, Rational::new(13, 5));
        assert_eq!(&e - &Rational::new(3, 5), Rational::from_integer(2));
        assert_eq!(e.to_u64_pair(), Some((13, 5)));
    }
}

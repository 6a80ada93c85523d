//! The exponent ladder `E_k = 2 + (q_{k-1} - 1)/(q_{k-2} + q_{k-1})` and
//! the convergent identities behind its monotonicity.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{characteristic_prefix, convergents, justin_check, ser_bigint, ConvergentTable, ContinuedFraction};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exact `E_k` for `k >= 2`; needs `q_{k-1}` in the table.
pub fn e_k(table: &ConvergentTable, k: usize) -> Result<Rational> {
    if k < 2 {
        return Err(Error::IndexOutOfRange {
            index: k,
            reason: "E_k is defined for k >= 2",
        });
    }
    if table.n_max() < k as i64 - 1 {
        return Err(Error::IndexOutOfRange {
            index: k,
            reason: "convergent table too short",
        });
    }
    let q1 = table.q(k as i64 - 1).expect("covered").clone();
    let q2 = table.q(k as i64 - 2).expect("covered").clone();
    Ok(Rational::from_integer(2) + Rational::new(q1.clone() - 1, q2 + q1))
}

/// Rational bounds `lo < √2 < hi` with `hi - lo = 10^-digits`.
pub fn sqrt2_bounds(digits: u32) -> (Rational, Rational) {
    let scale = BigInt::from(10).pow(digits);
    let root = (BigInt::from(2) * &scale * &scale).sqrt();
    (
        Rational::new(root.clone(), scale.clone()),
        Rational::new(root + 1, scale),
    )
}

/// Bounds on `2 + √2/2` derived from [`sqrt2_bounds`].
pub fn e_k_limit_bounds(digits: u32) -> (Rational, Rational) {
    let (lo, hi) = sqrt2_bounds(digits);
    let two = Rational::from_integer(2);
    let half = Rational::new(1, 2);
    (&two + &(&lo * &half), &two + &(&hi * &half))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QIdentityRow {
    pub k: usize,
    /// `q_{k-1}^2 - q_k q_{k-2}`
    #[serde(serialize_with = "ser_bigint")]
    pub value: BigInt,
    pub identity_holds: bool,
    /// `2 q_{k-1} > q_{k-1}^2 - q_k q_{k-2}`
    pub inequality_holds: bool,
    /// `E_{k+1} > E_k`, checked directly.
    pub increasing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QIdentityReport {
    pub rows: Vec<QIdentityRow>,
    pub all_hold: bool,
}

/// Checks `q_{k-1}^2 - q_k q_{k-2} = 7(-1)^k` and the monotonicity
/// inequality for `2 <= k <= k_max`. The constant 7 is specific to the
/// slope `[0; 4, 2̄]`.
pub fn verify_q_identity(table: &ConvergentTable, k_max: usize) -> Result<QIdentityReport> {
    if table.n_max() < k_max as i64 {
        return Err(Error::IndexOutOfRange {
            index: k_max,
            reason: "convergent table too short",
        });
    }
    let mut rows = Vec::new();
    for k in 2..=k_max {
        let k_i = k as i64;
        let (qk, qk1, qk2) = (
            table.q(k_i).expect("covered"),
            table.q(k_i - 1).expect("covered"),
            table.q(k_i - 2).expect("covered"),
        );
        let value = qk1 * qk1 - qk * qk2;
        let expected = if k % 2 == 0 { BigInt::from(7) } else { BigInt::from(-7) };
        let inequality_holds = BigInt::from(2) * qk1 > value;
        let increasing = e_k(table, k + 1)? > e_k(table, k)?;
        rows.push(QIdentityRow {
            k,
            identity_holds: value == expected,
            value,
            inequality_holds,
            increasing,
        });
    }
    let all_hold = rows
        .iter()
        .all(|r| r.identity_holds && r.inequality_holds && r.increasing);
    Ok(QIdentityReport { rows, all_hold })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SturmianRow {
    pub k: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub q_k: BigInt,
    pub e_k: Rational,
    pub e_k_decimal: f64,
    /// `q_{k-1}^2 - q_k q_{k-2}`, expected `±7`.
    pub identity_value: i64,
    /// Justin's bound checked on a characteristic prefix, when requested for this `k`.
    pub justin_check: Option<bool>,
}

/// One row per `k` in `2..=k_max` for the slope `[0; 4, 2̄]`. Justin's bound
/// is checked for `k <= justin_k_max`.
pub fn sturmian_report(k_max: usize, justin_k_max: usize) -> Result<Vec<SturmianRow>> {
    let cf = ContinuedFraction::paper_slope();
    let table = convergents(&cf, k_max + 1);
    let identity = verify_q_identity(&table, k_max)?;
    let justin_len = if justin_k_max >= 2 {
        let q = table
            .q_usize(justin_k_max as i64)
            .ok_or(Error::IndexOutOfRange {
                index: justin_k_max,
                reason: "justin range exceeds the table",
            })?;
        (q * 8).max(64)
    } else {
        0
    };
    let prefix = characteristic_prefix(&cf, justin_len);
    let mut rows = Vec::new();
    for (k, id_row) in (2..=k_max).zip(identity.rows) {
        let e = e_k(&table, k)?;
        let justin = if k <= justin_k_max {
            Some(justin_check(&table, k, &prefix)?.holds)
        } else {
            None
        };
        rows.push(SturmianRow {
            k,
            q_k: table.q(k as i64).expect("covered").clone(),
            e_k_decimal: e.to_f64(),
            e_k: e,
            identity_value: id_row.value.to_i64().unwrap_or(i64::MAX),
            justin_check: justin,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> ConvergentTable {
        convergents(&ContinuedFraction::paper_slope(), 41)
    }

    #[test]
    fn e_k_examples() {
        let t = table();
        assert_eq!(e_k(&t, 2).unwrap(), Rational::new(13, 5));
        assert_eq!(e_k(&t, 3).unwrap(), Rational::new(34, 13));
        assert!(e_k(&t, 1).is_err());
        let short = convergents(&ContinuedFraction::paper_slope(), 2);
        assert!(e_k(&short, 4).is_err());
    }

    #[test]
    fn q_identity_examples() {
        let t = table();
        let report = verify_q_identity(&t, 40).unwrap();
        assert!(report.all_hold);
        assert_eq!(report.rows[0].value, BigInt::from(7)); // 4^2 - 9*1
        assert_eq!(report.rows[1].value, BigInt::from(-7)); // 9^2 - 22*4
    }

    #[test]
    fn limit_is_approached_from_below() {
        let t = table();
        let (lo, hi) = e_k_limit_bounds(40);
        let tol = Rational::new(1, 1_000_000_000_000i64);
        let e40 = e_k(&t, 40).unwrap();
        assert!(e40 < lo);
        assert!(&hi - &e40 < tol);
        assert!((e40.to_f64() - (2.0 + 2f64.sqrt() / 2.0)).abs() < 1e-12);
    }

    #[test]
    fn sqrt2_interval_brackets() {
        let (lo, hi) = sqrt2_bounds(20);
        assert!(&lo * &lo < Rational::from_integer(2));
        assert!(&hi * &hi > Rational::from_integer(2));
    }
}

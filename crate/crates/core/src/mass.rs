//! Exact counts of self-orthogonal codes and the mass-formula audit.
//!
//! For `n` odd the number of self-orthogonal `[n, k]` codes is
//!
//! ```text
//!   prod_{i=0}^{k-1} (3^{2((n-1)/2 - i)} - 1) / prod_{i=1}^{k} (3^i - 1)
//! ```
//!
//! and for `n` even, with `e = +1` when `4 | n` and `e = -1` otherwise,
//!
//! ```text
//!   (3^{n-k} - e 3^{n/2-k} + e 3^{n/2} - 1) prod_{i=1}^{k-1} (3^{n-2i} - 1) / prod_{i=1}^{k} (3^i - 1).
//! ```
//!
//! Summing `2^n n! / |Aut(C)|` over a complete set of class representatives must
//! reproduce this count exactly.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::code::{monomial_group_order, CodeRecord};
use crate::error::{Error, Result};

fn pow3(e: usize) -> BigInt {
    Pow::pow(BigInt::from(3u32), e)
}

fn in_regime(n: usize, k: usize) -> bool {
    if n % 2 == 1 {
        k >= 1 && 2 * k < n
    } else {
        k >= 2 && 2 * k <= n
    }
}

fn exact_div(num: BigInt, den: &BigInt) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Data(format!("inexact division {num} / {den}")));
    }
    Ok(q)
}

/// Number of distinct self-orthogonal `[n, k]` codes.
///
/// Defined for `n` odd with `1 <= k <= (n-1)/2` and for `n` even with `2 <= k <= n/2`.
pub fn count_t(n: usize, k: usize) -> Result<BigUint> {
    if !in_regime(n, k) {
        return Err(Error::Domain { n, k });
    }
    let one = BigInt::one();
    let denominator: BigInt = (1..=k).map(|i| pow3(i) - &one).product();
    let numerator: BigInt = if n % 2 == 1 {
        let m = (n - 1) / 2;
        (0..k).map(|i| pow3(2 * (m - i)) - &one).product()
    } else {
        let eps = if n % 4 == 0 { BigInt::one() } else { -BigInt::one() };
        let head = pow3(n - k) - &eps * pow3(n / 2 - k) + &eps * pow3(n / 2) - &one;
        let tail: BigInt = (1..k).map(|i| pow3(n - 2 * i) - &one).product();
        head * tail
    };
    let t = exact_div(numerator, &denominator)?;
    Ok(t.to_biguint().expect("count is non-negative"))
}

/// Count of self-orthogonal `[n, k]` codes for every `k`, including the cases the
/// closed formula does not cover: `k = 0`, dimensions above `n/2`, and one-dimensional
/// codes of even length (counted directly as weight-`0 mod 3` vectors up to scalar).
pub fn expected_count(n: usize, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    if 2 * k > n {
        return BigUint::zero();
    }
    if n % 2 == 0 && k == 1 {
        let mut total = BigUint::zero();
        let mut binom = BigUint::one();
        for w in 1..=n {
            binom = binom * BigUint::from(n + 1 - w) / BigUint::from(w);
            if w % 3 == 0 {
                total += &binom << (w - 1);
            }
        }
        return total;
    }
    count_t(n, k).expect("parameters inside the formula's regime")
}

/// `ceil(T(n,k) / (2^{n-1} n!))`, a lower bound on the number of classes.
pub fn lower_bound(n: usize, k: usize) -> Result<BigUint> {
    let t = count_t(n, k)?;
    let half_group = monomial_group_order(n) >> 1;
    Ok(Integer::div_ceil(&t, &half_group))
}

/// Mass-formula check of a list of class representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassAudit {
    pub n: usize,
    pub k: usize,
    pub expected: BigUint,
    pub accumulated: BigUint,
    /// `expected - accumulated`.
    pub residual: BigInt,
}

impl MassAudit {
    pub fn is_complete(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Sums `2^n n! / |Aut(C)|` over `records` and compares with the expected count.
///
/// Fails if a group order is missing or does not divide `2^n n!`, or if the sum
/// overshoots the expected count (which means duplicate classes).
pub fn audit(records: &[CodeRecord], n: usize, k: usize) -> Result<MassAudit> {
    let group = monomial_group_order(n);
    let mut accumulated = BigUint::zero();
    for (i, r) in records.iter().enumerate() {
        let aut = r
            .aut_order
            .as_ref()
            .ok_or_else(|| Error::Data(format!("record {i} has no automorphism group order")))?;
        if aut.is_zero() {
            return Err(Error::Data(format!("record {i} has automorphism group order 0")));
        }
        let (q, rem) = group.div_rem(aut);
        if !rem.is_zero() {
            return Err(Error::Data(format!("record {i}: |Aut| = {aut} does not divide 2^{n} {n}!")));
        }
        accumulated += q;
    }
    let expected = expected_count(n, k);
    let residual = BigInt::from_biguint(Sign::Plus, expected.clone()) - BigInt::from_biguint(Sign::Plus, accumulated.clone());
    if residual.is_negative() {
        return Err(Error::Data(format!(
            "mass {accumulated} exceeds the count {expected} of [{n},{k}] codes: duplicate classes"
        )));
    }
    Ok(MassAudit { n, k, expected, accumulated, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;
    use crate::gf3::{Codewords, TritMatrix};

    /// Brute-force count of self-orthogonal one-dimensional codes.
    fn count_dimension_one(n: usize) -> u64 {
        Codewords::unbounded(&TritMatrix::identity(n)).filter(|v| !v.is_zero() && v.weight() % 3 == 0).count() as u64 / 2
    }

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_t(3, 1).unwrap(), BigUint::from(count_dimension_one(3)));
        assert_eq!(count_t(3, 1).unwrap(), BigUint::from(4u32));
        assert_eq!(count_t(4, 2).unwrap(), BigUint::from(8u32));
        assert_eq!(count_t(5, 1).unwrap(), BigUint::from(count_dimension_one(5)));
        assert_eq!(count_t(7, 1).unwrap(), BigUint::from(count_dimension_one(7)));
        assert_eq!(count_t(6, 3).unwrap(), BigUint::zero());
    }

    #[test]
    fn published_totals() {
        assert_eq!(count_t(24, 11).unwrap(), big("12850554292569078425974899530137600000"));
        assert_eq!(count_t(25, 12).unwrap(), big("25701205307660304745058529866383360000"));
    }

    #[test]
    fn lower_bounds() {
        let cases = [
            (26, 12, "757009213"),
            (27, 13, "56074757"),
            (28, 14, "2002670"),
            (29, 14, "82575085630"),
            (30, 14, "4936926278278054"),
        ];
        for (n, k, want) in cases {
            assert_eq!(lower_bound(n, k).unwrap(), big(want), "({n},{k})");
        }
    }

    #[test]
    fn regime() {
        assert!(matches!(count_t(4, 1), Err(Error::Domain { n: 4, k: 1 })));
        assert!(count_t(5, 3).is_err());
        assert!(count_t(5, 0).is_err());
        assert!(count_t(8, 5).is_err());
        assert!(lower_bound(4, 1).is_err());
    }

    #[test]
    fn expected_count_fills_gaps() {
        assert_eq!(expected_count(4, 0), BigUint::one());
        assert_eq!(expected_count(4, 3), BigUint::zero());
        for n in [2, 4, 6, 8] {
            assert_eq!(expected_count(n, 1), BigUint::from(count_dimension_one(n)), "n={n}");
        }
        assert_eq!(expected_count(9, 3), count_t(9, 3).unwrap());
    }

    #[test]
    fn positive_throughout_regime() {
        for n in 2..=30 {
            for k in 1..=n / 2 {
                if in_regime(n, k) && !(n % 4 == 2 && 2 * k == n) {
                    assert!(count_t(n, k).unwrap() > BigUint::zero(), "T({n},{k})");
                }
            }
        }
    }

    fn record(code: LinearCode, aut: u32) -> CodeRecord {
        let mut r = CodeRecord::new(code).unwrap();
        r.aut_order = Some(BigUint::from(aut));
        r
    }

    #[test]
    fn audit_examples() {
        let tetra = record(LinearCode::from_strs(&["1011", "0112"]).unwrap(), 48);
        let a = audit(std::slice::from_ref(&tetra), 4, 2).unwrap();
        assert_eq!(a.accumulated, BigUint::from(8u32));
        assert!(a.is_complete());

        let a = audit(&[], 4, 2).unwrap();
        assert_eq!(a.accumulated, BigUint::zero());
        assert_eq!(a.residual, BigInt::from(8));

        let rep = record(LinearCode::from_strs(&["111"]).unwrap(), 12);
        let a = audit(&[rep], 3, 1).unwrap();
        assert_eq!(a.accumulated, BigUint::from(4u32));
        assert!(a.is_complete());
    }

    #[test]
    fn audit_errors() {
        let bad = record(LinearCode::from_strs(&["1011", "0112"]).unwrap(), 7);
        assert!(matches!(audit(&[bad], 4, 2), Err(Error::Data(_))));
        let tetra = record(LinearCode::from_strs(&["1011", "0112"]).unwrap(), 48);
        assert!(matches!(audit(&[tetra.clone(), tetra], 4, 2), Err(Error::Data(_))));
        let mut missing = CodeRecord::new(LinearCode::from_strs(&["111"]).unwrap()).unwrap();
        missing.aut_order = None;
        assert!(audit(&[missing], 3, 1).is_err());
    }
}

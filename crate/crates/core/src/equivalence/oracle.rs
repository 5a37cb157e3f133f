//! Exhaustive equivalence and automorphism computations over the full monomial group.
//!
//! These walk all `2^n n!` monomial maps and serve as an independent check of the
//! digraph-based routines for short lengths.

use std::collections::HashSet;

use num_bigint::BigUint;

use super::CanonicalCertificate;
use crate::code::{LinearCode, Monomial};
use crate::error::{Error, Result};
use crate::gf3::Gf3;

/// Largest length accepted by the oracle (`2^7 7! = 645120` maps).
pub const ORACLE_MAX_LENGTH: usize = 7;

fn check_length(n: usize) -> Result<()> {
    if n > ORACLE_MAX_LENGTH {
        return Err(Error::OracleCapacity { n, cap: ORACLE_MAX_LENGTH });
    }
    Ok(())
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Calls `f` on every monomial map of length `n`.
pub fn for_each_monomial(n: usize, mut f: impl FnMut(&Monomial)) {
    let mut m = Monomial::identity(n);
    for_each_permutation(n, |perm| {
        m.perm.copy_from_slice(perm);
        for mask in 0u32..(1 << n) {
            for j in 0..n {
                m.scale[j] = if mask >> j & 1 == 1 { Gf3::TWO } else { Gf3::ONE };
            }
            f(&m);
        }
    });
}

fn serialize(code: &LinearCode) -> Vec<u8> {
    let mut out = vec![code.length() as u8, code.dimension() as u8];
    for r in code.rows() {
        out.extend(r.iter().map(Gf3::value));
    }
    out
}

/// Lexicographically least serialized RREF among all monomial images of `code`.
pub fn brute_force_certificate(code: &LinearCode) -> Result<CanonicalCertificate> {
    check_length(code.length())?;
    let mut best: Option<Vec<u8>> = None;
    for_each_monomial(code.length(), |m| {
        let s = serialize(&code.apply(m));
        if best.as_ref().map_or(true, |b| s < *b) {
            best = Some(s);
        }
    });
    Ok(CanonicalCertificate::from_bytes(best.expect("monomial group is nonempty")))
}

/// Number of monomial maps fixing `code`.
pub fn brute_force_automorphism_count(code: &LinearCode) -> Result<BigUint> {
    check_length(code.length())?;
    let mut count = 0u64;
    for_each_monomial(code.length(), |m| {
        if code.rows().iter().all(|r| code.contains(&m.apply(r))) {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// Every distinct subspace equivalent to `code`.
pub fn monomial_orbit(code: &LinearCode) -> Result<HashSet<LinearCode>> {
    check_length(code.length())?;
    let mut orbit = HashSet::new();
    for_each_monomial(code.length(), |m| {
        orbit.insert(code.apply(m));
    });
    Ok(orbit)
}

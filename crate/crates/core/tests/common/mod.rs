//! Helpers shared by the integration tests.
#![allow(dead_code)]

pub mod props;


use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use terncode_core::gf3::Codewords;
use terncode_core::{Gf3, LinearCode, Monomial, TritMatrix, TritVector};

/// Every self-orthogonal code of length `n`, indexed by dimension.
///
/// Built by adjoining isotropic vectors of the dual, one dimension at a time.
pub fn all_self_orthogonal_codes(n: usize) -> Vec<Vec<LinearCode>> {
    let isotropic: Vec<TritVector> = Codewords::unbounded(&TritMatrix::identity(n))
        .filter(|v| !v.is_zero() && v.weight() % 3 == 0)
        .collect();
    let mut levels = vec![vec![LinearCode::zero(n)]];
    loop {
        let mut next = HashSet::new();
        for code in levels.last().unwrap() {
            for v in &isotropic {
                if !code.contains(v) && code.rows().iter().all(|r| r.dot(v).is_zero()) {
                    let mut rows = code.rows().to_vec();
                    rows.push(*v);
                    next.insert(LinearCode::from_rows(n, rows).unwrap());
                }
            }
        }
        if next.is_empty() {
            return levels;
        }
        let mut next: Vec<LinearCode> = next.into_iter().collect();
        next.sort_by(|a, b| a.rows().cmp(b.rows()));
        levels.push(next);
    }
}

pub fn random_vector(n: usize, rng: &mut ChaCha8Rng) -> TritVector {
    let values: Vec<u8> = (0..n).map(|_| rng.gen_range(0..3)).collect();
    TritVector::from_values(&values)
}

pub fn random_monomial(n: usize, rng: &mut ChaCha8Rng) -> Monomial {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let scale = (0..n).map(|_| if rng.gen_bool(0.5) { Gf3::TWO } else { Gf3::ONE }).collect();
    Monomial::new(perm, scale).unwrap()
}

/// A random linear code (not necessarily self-orthogonal) of length `n`.
pub fn random_code(n: usize, rows: usize, rng: &mut ChaCha8Rng) -> LinearCode {
    LinearCode::from_rows(n, (0..rows).map(|_| random_vector(n, rng)).collect()).unwrap()
}

/// A random self-orthogonal code of length `n` and dimension at most `max_k`.
pub fn random_self_orthogonal(n: usize, max_k: usize, rng: &mut ChaCha8Rng) -> LinearCode {
    let mut code = LinearCode::zero(n);
    for _ in 0..64 * (max_k + 1) {
        if code.dimension() >= max_k {
            break;
        }
        let dual = code.dual();
        let mut v = TritVector::zero(n);
        for r in dual.rows() {
            v = v + r.scale(Gf3::new(rng.gen_range(0..3)));
        }
        if v.weight() % 3 == 0 && !code.contains(&v) {
            let mut rows = code.rows().to_vec();
            rows.push(v);
            code = LinearCode::from_rows(n, rows).unwrap();
        }
    }
    code
}

/// Reference construction of the lengthened code for any `b`, including `2b`.
pub fn lengthen_reference(parent: &LinearCode, b: &TritVector) -> LinearCode {
    let n = parent.length();
    let free: Vec<usize> = if parent.dimension() == 0 {
        (0..n).collect()
    } else {
        let pivots = parent.pivots();
        (0..n).filter(|c| !pivots.contains(c)).collect()
    };
    let mut first = vec![1u8];
    let mut tail = vec![0u8; n];
    for (i, &c) in free.iter().enumerate() {
        tail[c] = b.get(i).value();
    }
    first.extend(tail);
    let mut rows = vec![TritVector::from_values(&first)];
    rows.extend(parent.rows().iter().map(|r| r.prepend(Gf3::ZERO)));
    LinearCode::from_rows(n + 1, rows).unwrap()
}

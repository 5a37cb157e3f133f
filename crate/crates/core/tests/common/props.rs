//! Property checks, each driven by a length and a seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use terncode_core::{canonical_form, lengthen, lengthen_all, maximal_dimension, Gf3};

use super::{lengthen_reference, random_code, random_monomial, random_self_orthogonal};

pub type Check = Result<(), String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn weight_divisibility(n: usize, seed: u64) -> Check {
    let code = random_self_orthogonal(n, maximal_dimension(n), &mut rng(seed));
    for c in code.codewords().map_err(|e| e.to_string())? {
        if c.weight() % 3 != 0 {
            return Err(format!("{c} in {code:?} has weight {}", c.weight()));
        }
    }
    Ok(())
}

pub fn dual_involution(n: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let rows = r.gen_range(0..=n);
    let code = random_code(n, rows, &mut r);
    let back = code.dual().dual();
    if back != code {
        return Err(format!("dual of dual of {code:?} is {back:?}"));
    }
    if code.dimension() + code.dual().dimension() != n {
        return Err(format!("dimensions of {code:?} and its dual do not add up"));
    }
    Ok(())
}

/// Lengthens a random self-orthogonal parent of length `n - 1` with a random admissible `b`.
/// Returns `Ok(false)` when the parent admits no lengthening.
fn with_random_lengthening(
    n: usize,
    seed: u64,
    mut f: impl FnMut(&terncode_core::LengtheningCandidate) -> Check,
) -> Result<bool, String> {
    let mut r = rng(seed);
    let parent_len = n - 1;
    let max_k = maximal_dimension(parent_len).min(r.gen_range(0..=parent_len / 2));
    let parent = random_self_orthogonal(parent_len, max_k, &mut r);
    let candidates: Vec<_> = lengthen_all(&parent, 0).map_err(|e| e.to_string())?.collect();
    if candidates.is_empty() {
        return Ok(false);
    }
    f(&candidates[r.gen_range(0..candidates.len())])?;
    Ok(true)
}

pub fn shorten_lengthen_round_trip(n: usize, seed: u64) -> Check {
    with_random_lengthening(n, seed, |cand| {
        let c = &cand.result;
        if !c.is_self_orthogonal() || c.dimension() != cand.parent.dimension() + 1 || c.length() != n {
            return Err(format!("{c:?} is not a self-orthogonal lengthening of {:?}", cand.parent));
        }
        if lengthen(&cand.parent, &cand.b).map_err(|e| e.to_string())? != *c {
            return Err("lengthen and lengthen_all disagree".into());
        }
        if lengthen_reference(&cand.parent, &cand.b) != *c {
            return Err(format!("{c:?} differs from the reference construction"));
        }
        let back = c.shorten(0).map_err(|e| e.to_string())?;
        if back != cand.parent {
            return Err(format!("shortening {c:?} gives {back:?}, not {:?}", cand.parent));
        }
        Ok(())
    })
    .map(|_| ())
}

pub fn b_and_2b_agree(n: usize, seed: u64) -> Result<bool, String> {
    with_random_lengthening(n, seed, |cand| {
        let doubled = lengthen_reference(&cand.parent, &cand.b.scale(Gf3::TWO));
        let a = canonical_form(&cand.result).map_err(|e| e.to_string())?;
        let b = canonical_form(&doubled).map_err(|e| e.to_string())?;
        if a.certificate != b.certificate {
            return Err(format!("b = {} and 2b give different certificates", cand.b));
        }
        Ok(())
    })
}

/// Certificate and group order survive a random monomial map.
pub fn monomial_invariance(n: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let max_k = r.gen_range(1..=maximal_dimension(n));
    let code = random_self_orthogonal(n, max_k, &mut r);
    let m = random_monomial(n, &mut r);
    let image = code.apply(&m);
    let a = canonical_form(&code).map_err(|e| e.to_string())?;
    let b = canonical_form(&image).map_err(|e| e.to_string())?;
    if a.certificate != b.certificate {
        return Err(format!("{code:?} and its image {image:?} have different certificates"));
    }
    if a.aut.order != b.aut.order {
        return Err(format!("|Aut| changed from {} to {} under a monomial map", a.aut.order, b.aut.order));
    }
    Ok(())
}

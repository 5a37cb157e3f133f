//! Lengthening: the inverse of shortening.
//!
//! A self-orthogonal `[n-1, k-1]` parent with standard form `(I | A)` is extended by one
//! coordinate and one dimension through the generator
//!
//! ```text
//!     1 | 0 ... 0 | b
//!     0 |    I    | A
//! ```
//!
//! where `b` lies in the kernel of `A`, has weight `2 mod 3`, and starts with a 1
//! (`b` and `2b` give equivalent codes). The new coordinate is placed first and the
//! parent keeps its own coordinate order, so shortening at coordinate 0 gives the
//! parent back.

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf3::{check_cap, Codewords, Gf3, TritMatrix, TritVector};

/// One lengthening step: the parent, the vector `b` and the resulting code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengtheningCandidate {
    pub parent: LinearCode,
    pub b: TritVector,
    pub result: LinearCode,
}

/// Whether `b` passes the weight and normalization tests (kernel membership not included).
fn passes_weight_rules(b: &TritVector, d_min: usize) -> bool {
    let w = b.weight();
    w % 3 == 2 && w + 1 >= d_min && b.leading_value() == Some(Gf3::ONE)
}

/// Every admissible `b` for the standard-form block `a`.
///
/// `a` has `k-1` rows and `n-k` columns; a parent of dimension zero is passed as a
/// matrix with no rows, whose kernel is the whole space. Emits `b` with `A b^T = 0`,
/// `wt(b) >= d_min - 1`, `wt(b) = 2 (mod 3)` and leading entry 1.
pub fn admissible_b_vectors(a: &TritMatrix, d_min: usize) -> Result<impl Iterator<Item = TritVector>> {
    let kernel = a.nullspace();
    check_cap(kernel.row_count())?;
    Ok(Codewords::unbounded(&kernel).filter(move |b| passes_weight_rules(b, d_min)))
}

/// The standard-form block of a parent and the columns it occupies.
fn parent_block(parent: &LinearCode) -> (TritMatrix, Vec<usize>) {
    if parent.dimension() == 0 {
        return (TritMatrix::empty(parent.length()), (0..parent.length()).collect());
    }
    let (a, perm) = parent.generator().to_standard_form().expect("stored generator has full rank");
    let free = perm[parent.dimension()..].to_vec();
    (a, free)
}

fn lengthen_unchecked(parent: &LinearCode, free: &[usize], b: &TritVector) -> LinearCode {
    let mut first = TritVector::zero(parent.length());
    for (i, &c) in free.iter().enumerate() {
        first.set(c, b.get(i));
    }
    let mut rows = Vec::with_capacity(parent.dimension() + 1);
    rows.push(first.prepend(Gf3::ONE));
    rows.extend(parent.rows().iter().map(|r| r.prepend(Gf3::ZERO)));
    LinearCode::from_rows(parent.length() + 1, rows).expect("lengthened rows have equal length")
}

/// The `[n, k]` code `G(A, b)` built from a self-orthogonal `[n-1, k-1]` parent.
pub fn lengthen(parent: &LinearCode, b: &TritVector) -> Result<LinearCode> {
    if !parent.is_self_orthogonal() {
        return Err(Error::Precondition("parent is not self-orthogonal".into()));
    }
    let (a, free) = parent_block(parent);
    if b.len() != free.len() {
        return Err(Error::Precondition(format!("b has length {}, expected {}", b.len(), free.len())));
    }
    if !passes_weight_rules(b, 0) {
        return Err(Error::Precondition(format!("b = {b} fails the weight or leading-entry rule")));
    }
    if a.mul_vec(b).iter().any(|x| !x.is_zero()) {
        return Err(Error::Precondition(format!("b = {b} is not in the kernel of A")));
    }
    Ok(lengthen_unchecked(parent, &free, b))
}

/// All lengthenings of `parent` with admissible `b`, in kernel enumeration order.
pub fn lengthen_all(parent: &LinearCode, d_min: usize) -> Result<impl Iterator<Item = LengtheningCandidate> + '_> {
    if !parent.is_self_orthogonal() {
        return Err(Error::Precondition("parent is not self-orthogonal".into()));
    }
    let (a, free) = parent_block(parent);
    let bs = admissible_b_vectors(&a, d_min)?;
    Ok(bs.map(move |b| LengtheningCandidate {
        parent: parent.clone(),
        result: lengthen_unchecked(parent, &free, &b),
        b,
    }))
}

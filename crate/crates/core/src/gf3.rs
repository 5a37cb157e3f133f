//! Arithmetic and linear algebra over GF(3).
//!
//! Vectors are bit-sliced: one 64-bit plane marks the coordinates equal to 1,
//! another marks the coordinates equal to 2. Addition, negation, weight and
//! inner products are then a handful of word operations, which is what keeps
//! codeword enumeration and Gaussian elimination cheap at lengths up to 64.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use crate::error::{Error, Result};

/// Longest vector representable by the bit-sliced layout.
pub const MAX_LENGTH: usize = 64;

/// Default bound on `k` for any enumeration of `3^k` vectors.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

static ENUMERATION_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ENUMERATION_CAP);

/// Current process-wide enumeration cap (exponent of 3).
pub fn enumeration_cap() -> usize {
    ENUMERATION_CAP.load(AtomicOrdering::Relaxed)
}

/// Override the process-wide enumeration cap. Intended to be called once at startup.
pub fn set_enumeration_cap(cap: usize) {
    ENUMERATION_CAP.store(cap, AtomicOrdering::Relaxed);
}

/// Fail with a capacity error if `3^dim` exceeds the current cap.
pub fn check_cap(dim: usize) -> Result<()> {
    let cap = enumeration_cap();
    if dim > cap {
        Err(Error::Capacity { needed: dim, cap })
    } else {
        Ok(())
    }
}

/// An element of the field with three elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf3(u8);

impl Gf3 {
    pub const ZERO: Gf3 = Gf3(0);
    pub const ONE: Gf3 = Gf3(1);
    pub const TWO: Gf3 = Gf3(2);

    /// Reduces any integer modulo 3.
    pub fn new(value: u32) -> Self {
        Gf3((value % 3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse of a nonzero element; every nonzero element is its own inverse.
    pub fn inverse(self) -> Option<Gf3> {
        (self.0 != 0).then_some(self)
    }
}

impl Add for Gf3 {
    type Output = Gf3;
    fn add(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 + rhs.0) % 3)
    }
}

impl Sub for Gf3 {
    type Output = Gf3;
    fn sub(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 + 3 - rhs.0) % 3)
    }
}

impl Mul for Gf3 {
    type Output = Gf3;
    fn mul(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 * rhs.0) % 3)
    }
}

impl Neg for Gf3 {
    type Output = Gf3;
    fn neg(self) -> Gf3 {
        Gf3((3 - self.0) % 3)
    }
}

impl fmt::Display for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A vector of length at most [`MAX_LENGTH`] over GF(3).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TritVector {
    len: u8,
    ones: u64,
    twos: u64,
}

#[inline]
fn low_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl TritVector {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_LENGTH, "vector length {len} exceeds {MAX_LENGTH}");
        TritVector { len: len as u8, ones: 0, twos: 0 }
    }

    /// Builds a vector from raw bit planes; bits outside `len` are discarded.
    pub fn from_planes(len: usize, ones: u64, twos: u64) -> Self {
        assert!(len <= MAX_LENGTH, "vector length {len} exceeds {MAX_LENGTH}");
        let mask = low_mask(len);
        let ones = ones & mask;
        let twos = twos & mask & !ones;
        TritVector { len: len as u8, ones, twos }
    }

    pub fn from_values(values: &[u8]) -> Self {
        let mut v = TritVector::zero(values.len());
        for (i, &x) in values.iter().enumerate() {
            v.set(i, Gf3::new(x as u32));
        }
        v
    }

    /// Parses a string of the digits `0`, `1`, `2`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.len() > MAX_LENGTH {
            return Err(Error::Argument(format!("vector length {} exceeds {MAX_LENGTH}", s.len())));
        }
        let mut v = TritVector::zero(s.len());
        for (i, ch) in s.chars().enumerate() {
            let x = match ch {
                '0' => 0,
                '1' => 1,
                '2' => 2,
                other => return Err(Error::Argument(format!("invalid trit {other:?}"))),
            };
            v.set(i, Gf3(x));
        }
        Ok(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn ones(&self) -> u64 {
        self.ones
    }

    #[inline]
    pub fn twos(&self) -> u64 {
        self.twos
    }

    /// Bit mask of the nonzero coordinates.
    #[inline]
    pub fn support(&self) -> u64 {
        self.ones | self.twos
    }

    #[inline]
    pub fn get(&self, i: usize) -> Gf3 {
        debug_assert!(i < self.len());
        if self.ones >> i & 1 == 1 {
            Gf3::ONE
        } else if self.twos >> i & 1 == 1 {
            Gf3::TWO
        } else {
            Gf3::ZERO
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, x: Gf3) {
        assert!(i < self.len(), "index {i} out of range for length {}", self.len);
        let bit = 1u64 << i;
        self.ones &= !bit;
        self.twos &= !bit;
        match x.0 {
            1 => self.ones |= bit,
            2 => self.twos |= bit,
            _ => {}
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.support() == 0
    }

    /// Number of nonzero coordinates.
    #[inline]
    pub fn weight(&self) -> usize {
        self.support().count_ones() as usize
    }

    /// Index of the first nonzero coordinate.
    #[inline]
    pub fn leading_index(&self) -> Option<usize> {
        let s = self.support();
        (s != 0).then(|| s.trailing_zeros() as usize)
    }

    /// Value of the first nonzero coordinate.
    pub fn leading_value(&self) -> Option<Gf3> {
        self.leading_index().map(|i| self.get(i))
    }

    #[inline]
    pub fn scale(&self, c: Gf3) -> TritVector {
        match c.0 {
            0 => TritVector::zero(self.len()),
            1 => *self,
            _ => -*self,
        }
    }

    /// Standard inner product. Panics on length mismatch; see [`inner_product`].
    #[inline]
    pub fn dot(&self, other: &TritVector) -> Gf3 {
        assert_eq!(self.len, other.len, "inner product of vectors of different length");
        let plus = ((self.ones & other.ones) | (self.twos & other.twos)).count_ones();
        let minus = ((self.ones & other.twos) | (self.twos & other.ones)).count_ones();
        Gf3::new(plus + 2 * minus)
    }

    /// Entries at the given column indices, in that order.
    pub fn select(&self, cols: &[usize]) -> TritVector {
        let mut out = TritVector::zero(cols.len());
        for (i, &c) in cols.iter().enumerate() {
            out.set(i, self.get(c));
        }
        out
    }

    /// Prepends a coordinate at index 0, shifting the rest right.
    pub fn prepend(&self, x: Gf3) -> TritVector {
        let mut out = TritVector::from_planes(self.len() + 1, self.ones << 1, self.twos << 1);
        out.set(0, x);
        out
    }

    /// Appends a coordinate at the end.
    pub fn append(&self, x: Gf3) -> TritVector {
        let mut out = TritVector::from_planes(self.len() + 1, self.ones, self.twos);
        out.set(self.len(), x);
        out
    }

    /// Removes coordinate `i`.
    pub fn delete(&self, i: usize) -> TritVector {
        assert!(i < self.len());
        let low = low_mask(i);
        let squeeze = |p: u64| (p & low) | ((p >> 1) & !low);
        TritVector::from_planes(self.len() - 1, squeeze(self.ones), squeeze(self.twos))
    }

    pub fn iter(&self) -> impl Iterator<Item = Gf3> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn to_values(&self) -> Vec<u8> {
        self.iter().map(Gf3::value).collect()
    }
}

impl Add for TritVector {
    type Output = TritVector;
    #[inline]
    fn add(self, b: TritVector) -> TritVector {
        debug_assert_eq!(self.len, b.len);
        let (a1, a2, b1, b2) = (self.ones, self.twos, b.ones, b.twos);
        let a0 = !(a1 | a2);
        let b0 = !(b1 | b2);
        let ones = (a1 & b0) | (a0 & b1) | (a2 & b2);
        let twos = (a2 & b0) | (a0 & b2) | (a1 & b1);
        let mask = low_mask(self.len());
        TritVector { len: self.len, ones: ones & mask, twos: twos & mask }
    }
}

impl Neg for TritVector {
    type Output = TritVector;
    #[inline]
    fn neg(self) -> TritVector {
        TritVector { len: self.len, ones: self.twos, twos: self.ones }
    }
}

impl Sub for TritVector {
    type Output = TritVector;
    #[inline]
    fn sub(self, b: TritVector) -> TritVector {
        self + (-b)
    }
}

impl Ord for TritVector {
    /// Lexicographic order on `(len, entries)`, coordinate 0 most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            let diff = (self.ones ^ other.ones) | (self.twos ^ other.twos);
            if diff == 0 {
                Ordering::Equal
            } else {
                let i = diff.trailing_zeros() as usize;
                self.get(i).cmp(&other.get(i))
            }
        })
    }
}

impl PartialOrd for TritVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TritVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in self.iter() {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TritVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TritVector({self})")
    }
}

/// Inner product with a length check.
pub fn inner_product(x: &TritVector, y: &TritVector) -> Result<Gf3> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!("lengths {} and {}", x.len(), y.len())));
    }
    Ok(x.dot(y))
}

pub fn weight(x: &TritVector) -> usize {
    x.weight()
}

/// A matrix over GF(3) stored as bit-sliced rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TritMatrix {
    cols: usize,
    rows: Vec<TritVector>,
}

impl TritMatrix {
    pub fn new(cols: usize, rows: Vec<TritVector>) -> Result<Self> {
        if cols > MAX_LENGTH {
            return Err(Error::Argument(format!("{cols} columns exceeds {MAX_LENGTH}")));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("row of length {} in a {cols}-column matrix", r.len())));
        }
        Ok(TritMatrix { cols, rows })
    }

    pub fn empty(cols: usize) -> Self {
        TritMatrix { cols, rows: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut v = TritVector::zero(n);
                v.set(i, Gf3::ONE);
                v
            })
            .collect();
        TritMatrix { cols: n, rows }
    }

    pub fn from_rows_str(rows: &[&str]) -> Result<Self> {
        let parsed = rows.iter().map(|r| TritVector::parse(r)).collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, |r| r.len());
        TritMatrix::new(cols, parsed)
    }

    pub fn rows(&self) -> &[TritVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<TritVector> {
        self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Gf3 {
        self.rows[r].get(c)
    }

    /// `M v^T`, one entry per row.
    pub fn mul_vec(&self, v: &TritVector) -> Vec<Gf3> {
        self.rows.iter().map(|r| r.dot(v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(TritVector::is_zero)
    }

    /// Reduced row-echelon form with zero rows kept at the bottom.
    pub fn rref(&self) -> TritMatrix {
        let mut rows = self.rows.clone();
        reduce_rows(&mut rows, self.cols);
        TritMatrix { cols: self.cols, rows }
    }

    /// Nonzero rows of the reduced row-echelon form.
    pub fn row_space_basis(&self) -> TritMatrix {
        let mut m = self.rref();
        m.rows.retain(|r| !r.is_zero());
        m
    }

    pub fn rank(&self) -> usize {
        self.row_space_basis().row_count()
    }

    /// Basis of `{v : M v^T = 0}`; one vector per non-pivot column.
    pub fn nullspace(&self) -> TritMatrix {
        let basis = self.row_space_basis();
        let pivots = pivot_columns(&basis.rows);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = TritVector::zero(self.cols);
                v.set(free, Gf3::ONE);
                for (row, &p) in basis.rows.iter().zip(&pivots) {
                    v.set(p, -row.get(free));
                }
                v
            })
            .collect();
        TritMatrix { cols: self.cols, rows }
    }

    /// Brings a full-row-rank matrix to the shape `(I_k | A)`.
    ///
    /// Returns `A` and the column permutation (new position -> old column) that moves
    /// the pivot columns of the RREF to the front, keeping relative order on both sides.
    pub fn to_standard_form(&self) -> Result<(TritMatrix, Vec<usize>)> {
        let basis = self.row_space_basis();
        if basis.row_count() != self.row_count() {
            return Err(Error::Rank { expected: self.row_count(), found: basis.row_count() });
        }
        let pivots = pivot_columns(&basis.rows);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let a_rows = basis.rows.iter().map(|r| r.select(&free)).collect();
        let mut perm = pivots;
        perm.extend_from_slice(&free);
        Ok((TritMatrix { cols: free.len(), rows: a_rows }, perm))
    }

    /// Columns reordered so that new column `i` is old column `perm[i]`.
    pub fn permute_columns(&self, perm: &[usize]) -> TritMatrix {
        TritMatrix { cols: perm.len(), rows: self.rows.iter().map(|r| r.select(perm)).collect() }
    }
}

/// In-place RREF of `rows`: leftmost pivots, scanned top-down, normalized to 1.
pub(crate) fn reduce_rows(rows: &mut [TritVector], cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r].get(c).is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        if rows[rank].get(c) == Gf3::TWO {
            rows[rank] = -rows[rank];
        }
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank {
                match row.get(c).value() {
                    1 => *row = *row - pivot,
                    2 => *row = *row + pivot,
                    _ => {}
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Leading-entry column of each (nonzero) row of an echelon basis.
pub(crate) fn pivot_columns(rows: &[TritVector]) -> Vec<usize> {
    rows.iter().filter_map(TritVector::leading_index).collect()
}

/// Reduces `v` against an RREF basis; the result is zero iff `v` lies in the row space.
pub(crate) fn reduce_against(basis: &[TritVector], pivots: &[usize], mut v: TritVector) -> TritVector {
    for (row, &p) in basis.iter().zip(pivots) {
        match v.get(p).value() {
            1 => v = v - *row,
            2 => v = v + *row,
            _ => {}
        }
    }
    v
}

/// Iterator over all `3^k` combinations of the rows of a matrix.
///
/// Message vectors are visited in lexicographic order (first row most significant),
/// and each step costs one vector addition per changed message digit.
#[derive(Clone, Debug)]
pub struct Codewords {
    rows: Vec<TritVector>,
    digits: Vec<u8>,
    current: TritVector,
    done: bool,
}

impl Codewords {
    /// Enumerates without consulting the process-wide cap.
    pub fn unbounded(g: &TritMatrix) -> Self {
        Codewords {
            rows: g.rows.clone(),
            digits: vec![0; g.row_count()],
            current: TritVector::zero(g.cols),
            done: false,
        }
    }
}

impl Iterator for Codewords {
    type Item = TritVector;

    fn next(&mut self) -> Option<TritVector> {
        if self.done {
            return None;
        }
        let out = self.current;
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.current = self.current + self.rows[i];
            self.digits[i] = (self.digits[i] + 1) % 3;
            if self.digits[i] != 0 {
                break;
            }
        }
        Some(out)
    }
}

/// All codewords `m G` for messages `m` in lexicographic order.
pub fn enumerate_codewords(g: &TritMatrix) -> Result<Codewords> {
    check_cap(g.row_count())?;
    Ok(Codewords::unbounded(g))
}

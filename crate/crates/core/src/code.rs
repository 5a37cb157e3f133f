//! Ternary linear codes, their duals, and the self-orthogonality predicates.

use std::fmt;

use num_bigint::BigUint;

use crate::equivalence::CanonicalCertificate;
use crate::error::{Error, Result};
use crate::gf3::{
    check_cap, enumerate_codewords, pivot_columns, reduce_against, reduce_rows, Codewords, Gf3,
    TritMatrix, TritVector, MAX_LENGTH,
};

/// An `[n, k]` code over GF(3), stored through the unique RREF of its generator matrix.
///
/// Two values compare equal exactly when they span the same subspace; equivalence
/// under monomial maps is a separate, much more expensive question.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    n: usize,
    generator: TritMatrix,
}

impl LinearCode {
    /// The code spanned by `rows`, all of length `n`.
    pub fn from_rows(n: usize, rows: Vec<TritVector>) -> Result<Self> {
        if n > MAX_LENGTH {
            return Err(Error::Argument(format!("length {n} exceeds {MAX_LENGTH}")));
        }
        let mut rows = TritMatrix::new(n, rows)?.into_rows();
        let rank = reduce_rows(&mut rows, n);
        rows.truncate(rank);
        Ok(LinearCode { n, generator: TritMatrix::new(n, rows)? })
    }

    /// The `[n, 0]` code.
    pub fn zero(n: usize) -> Self {
        LinearCode { n, generator: TritMatrix::empty(n) }
    }

    /// The whole space `GF(3)^n`.
    pub fn full(n: usize) -> Self {
        LinearCode { n, generator: TritMatrix::identity(n) }
    }

    /// Parses generator rows written as digit strings.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        make_code(&rows.iter().map(|r| TritVector::parse(r)).collect::<Result<Vec<_>>>()?)
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.generator.row_count()
    }

    /// RREF generator matrix with exactly `k` rows.
    pub fn generator(&self) -> &TritMatrix {
        &self.generator
    }

    pub fn rows(&self) -> &[TritVector] {
        self.generator.rows()
    }

    pub fn pivots(&self) -> Vec<usize> {
        pivot_columns(self.rows())
    }

    pub fn contains(&self, v: &TritVector) -> bool {
        v.len() == self.n && reduce_against(self.rows(), &self.pivots(), *v).is_zero()
    }

    /// All `3^k` codewords, subject to the enumeration cap.
    pub fn codewords(&self) -> Result<Codewords> {
        enumerate_codewords(&self.generator)
    }

    /// Entry `w` counts the codewords of weight `w`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        let mut dist = vec![0u64; self.n + 1];
        for c in self.codewords()? {
            dist[c.weight()] += 1;
        }
        Ok(dist)
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode { n: self.n, generator: self.generator.nullspace().row_space_basis() }
    }

    pub fn is_self_orthogonal(&self) -> bool {
        let rows = self.rows();
        rows.iter().enumerate().all(|(i, a)| rows[i..].iter().all(|b| a.dot(b).is_zero()))
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.n && self.is_self_orthogonal()
    }

    /// Smallest nonzero weight. Undefined for the zero code.
    pub fn minimum_weight(&self) -> Result<usize> {
        if self.dimension() == 0 {
            return Err(Error::Argument("minimum weight of the zero code".into()));
        }
        Ok(self.codewords()?.filter(|c| !c.is_zero()).map(|c| c.weight()).min().unwrap_or(0))
    }

    /// Minimum weight of the dual code; 1 exactly when some coordinate is identically zero.
    pub fn dual_distance(&self) -> Result<usize> {
        if self.dimension() == self.n {
            return Err(Error::Argument("dual distance of the full space".into()));
        }
        check_cap(self.n - self.dimension())?;
        self.dual().minimum_weight()
    }

    /// Coordinates on which every codeword vanishes.
    pub fn zero_coordinates(&self) -> Vec<usize> {
        let support = self.rows().iter().fold(0u64, |acc, r| acc | r.support());
        (0..self.n).filter(|&j| support >> j & 1 == 0).collect()
    }

    /// Codewords vanishing at `coord` (0-based), with that coordinate deleted.
    pub fn shorten(&self, coord: usize) -> Result<LinearCode> {
        if coord >= self.n {
            return Err(Error::Argument(format!("coordinate {coord} out of range for length {}", self.n)));
        }
        let mut rows = self.rows().to_vec();
        if let Some(p) = rows.iter().position(|r| !r.get(coord).is_zero()) {
            let mut pivot = rows.remove(p);
            if pivot.get(coord) == Gf3::TWO {
                pivot = -pivot;
            }
            for row in rows.iter_mut() {
                *row = *row - pivot.scale(row.get(coord));
            }
        }
        let rows = rows.into_iter().map(|r| r.delete(coord)).collect();
        LinearCode::from_rows(self.n - 1, rows)
    }

    /// The `[n+1, k]` code obtained by appending an always-zero coordinate.
    pub fn zero_extend(&self) -> LinearCode {
        let rows = self.rows().iter().map(|r| r.append(Gf3::ZERO)).collect();
        LinearCode { n: self.n + 1, generator: TritMatrix::new(self.n + 1, rows).expect("row lengths agree") }
    }

    /// All `(3^k - 1)/2` subcodes of codimension one.
    ///
    /// Each is the kernel of a nonzero functional on the message space, taken once per
    /// functional up to scalar (first nonzero coefficient 1).
    pub fn maximal_subcodes(&self) -> Result<impl Iterator<Item = LinearCode> + '_> {
        let k = self.dimension();
        if k == 0 {
            return Err(Error::Argument("the zero code has no proper subcodes".into()));
        }
        check_cap(k)?;
        let functionals = Codewords::unbounded(&TritMatrix::identity(k))
            .filter(|f| f.leading_value() == Some(Gf3::ONE));
        Ok(functionals.map(move |f| {
            let messages = TritMatrix::new(k, vec![f]).expect("functional length").nullspace();
            let rows = messages.rows().iter().map(|m| self.encode(m)).collect();
            LinearCode::from_rows(self.n, rows).expect("subcode rows have code length")
        }))
    }

    /// `m G` for a message of length `k`.
    pub fn encode(&self, message: &TritVector) -> TritVector {
        self.rows()
            .iter()
            .enumerate()
            .fold(TritVector::zero(self.n), |acc, (i, r)| acc + r.scale(message.get(i)))
    }

    /// Whether no strictly larger self-orthogonal code contains this one.
    ///
    /// Decided by searching the dual for an isotropic vector outside the code.
    pub fn is_maximal_self_orthogonal(&self) -> Result<bool> {
        if !self.is_self_orthogonal() {
            return Err(Error::Argument("code is not self-orthogonal".into()));
        }
        check_cap(self.n - self.dimension())?;
        let dual = self.dual();
        let pivots = self.pivots();
        let extendable = Codewords::unbounded(dual.generator())
            .any(|x| x.weight() % 3 == 0 && !reduce_against(self.rows(), &pivots, x).is_zero());
        Ok(!extendable)
    }

    /// Image of the code under a monomial map.
    pub fn apply(&self, m: &Monomial) -> LinearCode {
        let rows = self.rows().iter().map(|r| m.apply(r)).collect();
        LinearCode::from_rows(self.n, rows).expect("monomial preserves length")
    }

    /// Serializes in the plain-text code file format (RREF rows).
    pub fn to_code_file(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.dimension());
        for r in self.rows() {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the code file format: a `n k` header, `k` rows of digits, then `#` comments.
    pub fn parse_code_file(text: &str) -> Result<LinearCode> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let parse_err = |line: usize, msg: &str| Error::Parse { line, msg: msg.into() };
        let nums: Vec<usize> = header
            .split(' ')
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(1, "header must be two decimal integers `n k`"))?;
        let [n, k] = nums[..] else {
            return Err(parse_err(1, "header must be two decimal integers `n k`"));
        };
        if n == 0 || n > MAX_LENGTH || k > n {
            return Err(parse_err(1, "invalid code parameters"));
        }
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let Some((i, line)) = lines.next() else {
                return Err(parse_err(rows.len() + 2, "missing generator row"));
            };
            if line.len() != n {
                return Err(parse_err(i + 1, &format!("expected {n} trits, found {}", line.len())));
            }
            rows.push(TritVector::parse(line).map_err(|e| parse_err(i + 1, &e.to_string()))?);
        }
        for (i, line) in lines {
            if !(line.starts_with('#') || line.trim().is_empty()) {
                return Err(parse_err(i + 1, "trailing content must be `#` comments"));
            }
        }
        let code = LinearCode::from_rows(n, rows)?;
        if code.dimension() != k {
            return Err(parse_err(2, &format!("rows span dimension {} instead of {k}", code.dimension())));
        }
        Ok(code)
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]{{", self.n, self.dimension())?;
        for (i, r) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// The code spanned by `rows`; the length is taken from the rows.
pub fn make_code(rows: &[TritVector]) -> Result<LinearCode> {
    let first = rows.first().ok_or_else(|| Error::Argument("no rows and no length given".into()))?;
    LinearCode::from_rows(first.len(), rows.to_vec())
}

/// A monomial map: coordinate `j` is sent to `perm[j]` and multiplied by `scale[j]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub perm: Vec<usize>,
    pub scale: Vec<Gf3>,
}

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Monomial { perm: (0..n).collect(), scale: vec![Gf3::ONE; n] }
    }

    pub fn new(perm: Vec<usize>, scale: Vec<Gf3>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Argument("not a permutation".into()));
            }
        }
        if scale.len() != n || scale.iter().any(|s| s.is_zero()) {
            return Err(Error::Argument("scalars must be nonzero, one per coordinate".into()));
        }
        Ok(Monomial { perm, scale })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn apply(&self, x: &TritVector) -> TritVector {
        let mut y = TritVector::zero(x.len());
        for j in 0..x.len() {
            y.set(self.perm[j], x.get(j) * self.scale[j]);
        }
        y
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Monomial) -> Monomial {
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let scale = self.perm.iter().zip(&self.scale).map(|(&p, &s)| s * other.scale[p]).collect();
        Monomial { perm, scale }
    }
}

/// `2^n n!`, the order of the monomial group on `n` coordinates.
pub fn monomial_group_order(n: usize) -> BigUint {
    let mut order = BigUint::from(1u32) << n;
    for i in 2..=n {
        order *= BigUint::from(i);
    }
    order
}

/// A class representative together with its computed invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeRecord {
    pub code: LinearCode,
    /// Minimum weight; 0 for the zero code.
    pub min_weight: usize,
    pub dual_distance: usize,
    pub aut_order: Option<BigUint>,
    pub certificate: Option<CanonicalCertificate>,
}

impl CodeRecord {
    /// Computes minimum weight and dual distance; the group order and certificate are left empty.
    pub fn new(code: LinearCode) -> Result<Self> {
        let min_weight = if code.dimension() == 0 { 0 } else { code.minimum_weight()? };
        let dual_distance = code.dual_distance()?;
        Ok(CodeRecord { code, min_weight, dual_distance, aut_order: None, certificate: None })
    }
}

//! Monomial equivalence of ternary codes via vertex-colored digraphs.
//!
//! A code is encoded as a digraph whose vertices are a spanning set of codewords
//! (all words of the weights in a [`WeightSet`]) plus the `2n` coordinate-value pairs.
//! Two codes with the same weight set are equivalent exactly when their digraphs are
//! isomorphic, and the digraph's automorphism group is the code's monomial group.

mod digraph;
pub mod oracle;
mod search;

use std::fmt;

use num_bigint::BigUint;

use crate::code::{LinearCode, Monomial};
use crate::error::Result;
use crate::gf3::{pivot_columns, reduce_against, Gf3, TritVector};

pub use digraph::{build_digraph, build_digraph_from_words, coordinate_vertex, ColoredDigraph, COORDINATE_COLOR};
pub use search::{canonical_search, SearchResult};

/// The codeword weights whose words form the digraph's codeword vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightSet(Vec<usize>);

impl WeightSet {
    pub fn new(mut weights: Vec<usize>) -> Self {
        weights.sort_unstable();
        weights.dedup();
        WeightSet(weights)
    }

    pub fn weights(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, w: usize) -> bool {
        self.0.binary_search(&w).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Adds nonzero weights by increasing class size (then increasing weight) until the
/// selected codewords span the code. Depends only on the weight distribution.
pub fn select_weight_set(code: &LinearCode) -> Result<WeightSet> {
    let words: Vec<TritVector> = code.codewords()?.filter(|c| !c.is_zero()).collect();
    Ok(select_from_words(code.dimension(), &words))
}

fn select_from_words(k: usize, words: &[TritVector]) -> WeightSet {
    let n = words.first().map_or(0, |w| w.len());
    let mut sizes = vec![0usize; n + 1];
    for w in words {
        sizes[w.weight()] += 1;
    }
    let mut order: Vec<usize> = (1..=n).filter(|&i| sizes[i] > 0).collect();
    order.sort_by_key(|&i| (sizes[i], i));

    let mut basis: Vec<TritVector> = Vec::new();
    let mut chosen = Vec::new();
    for i in order {
        if basis.len() == k {
            break;
        }
        chosen.push(i);
        for w in words.iter().filter(|w| w.weight() == i) {
            let pivots = pivot_columns(&basis);
            let r = reduce_against(&basis, &pivots, *w);
            if !r.is_zero() {
                basis.push(r);
                crate::gf3::reduce_rows(&mut basis, n);
                if basis.len() == k {
                    break;
                }
            }
        }
    }
    WeightSet::new(chosen)
}

/// Byte string that is equal for two codes exactly when they are equivalent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCertificate(Vec<u8>);

impl CanonicalCertificate {
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        CanonicalCertificate(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        hex::decode(s).ok().map(CanonicalCertificate)
    }
}

impl fmt::Debug for CanonicalCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hex = self.to_hex();
        if hex.len() > 24 {
            write!(f, "Cert({}..{} bytes)", &hex[..24], self.0.len())
        } else {
            write!(f, "Cert({hex})")
        }
    }
}

/// Order of the monomial automorphism group, with a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroupInfo {
    pub order: BigUint,
    pub generators: Vec<Monomial>,
}

/// Certificate, group and weight set from a single canonical search.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub weight_set: WeightSet,
    pub certificate: CanonicalCertificate,
    pub aut: AutGroupInfo,
}

fn push_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_le_bytes());
}

/// Reads the monomial action of a digraph automorphism off the coordinate vertices.
fn monomial_from_vertex_map(n: usize, gamma: &[u32]) -> Monomial {
    let mut perm = vec![0; n];
    let mut scale = vec![Gf3::ONE; n];
    for j in 0..n {
        let image = gamma[coordinate_vertex(j, 1) as usize] as usize;
        perm[j] = image / 2;
        scale[j] = Gf3::new(image as u32 % 2 + 1);
    }
    Monomial { perm, scale }
}

/// Runs the canonical search on the code's digraph.
///
/// The certificate starts with `n`, `k` and each selected weight with its class size,
/// followed by the digraph relabeled canonically.
pub fn canonical_form(code: &LinearCode) -> Result<CanonicalForm> {
    let n = code.length();
    let words: Vec<TritVector> = code.codewords()?.filter(|c| !c.is_zero()).collect();
    let weight_set = select_from_words(code.dimension(), &words);
    let selected: Vec<TritVector> = words.into_iter().filter(|c| weight_set.contains(c.weight())).collect();
    let graph = build_digraph_from_words(n, &selected);
    let result = canonical_search(&graph);

    let mut bytes = Vec::with_capacity(4 * (result.canonical_image.len() + 8));
    push_u32(&mut bytes, n as u32);
    push_u32(&mut bytes, code.dimension() as u32);
    push_u32(&mut bytes, weight_set.len() as u32);
    for &w in weight_set.weights() {
        push_u32(&mut bytes, w as u32);
        push_u32(&mut bytes, selected.iter().filter(|c| c.weight() == w).count() as u32);
    }
    for &x in &result.canonical_image {
        push_u32(&mut bytes, x);
    }

    let generators = result.generators.iter().map(|g| monomial_from_vertex_map(n, g)).collect();
    Ok(CanonicalForm {
        weight_set,
        certificate: CanonicalCertificate(bytes),
        aut: AutGroupInfo { order: result.group_order, generators },
    })
}

pub fn canonical_certificate(code: &LinearCode) -> Result<CanonicalCertificate> {
    Ok(canonical_form(code)?.certificate)
}

/// Equivalent under some monomial map. Codes of different length or dimension are not.
pub fn are_equivalent(a: &LinearCode, b: &LinearCode) -> Result<bool> {
    if a.length() != b.length() || a.dimension() != b.dimension() {
        return Ok(false);
    }
    Ok(canonical_certificate(a)? == canonical_certificate(b)?)
}

pub fn automorphism_order(code: &LinearCode) -> Result<AutGroupInfo> {
    Ok(canonical_form(code)?.aut)
}

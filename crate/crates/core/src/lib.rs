//! Classification of ternary self-orthogonal codes up to monomial equivalence.
//!
//! Codes are generated bottom-up by lengthening (adding one coordinate and one
//! dimension) and zero extension, deduplicated by canonical certificates of their
//! colored digraphs, and audited against the exact mass formula.

pub mod classify;
pub mod code;
pub mod equivalence;
pub mod error;
pub mod extension;
pub mod gf3;
pub mod mass;

pub use classify::{
    classify_maximal, classify_so, dedupe_batch, load_manifest, maximal_dimension, save_manifest, ClassificationManifest,
    Classifier,
};
pub use code::{make_code, monomial_group_order, CodeRecord, LinearCode, Monomial};
pub use equivalence::{
    are_equivalent, automorphism_order, canonical_certificate, canonical_form, select_weight_set, AutGroupInfo,
    CanonicalCertificate, ColoredDigraph, WeightSet,
};
pub use error::{Error, Result};
pub use extension::{admissible_b_vectors, lengthen, lengthen_all, LengtheningCandidate};
pub use gf3::{enumeration_cap, set_enumeration_cap, Gf3, TritMatrix, TritVector};
pub use mass::{audit, count_t, expected_count, lower_bound, MassAudit};

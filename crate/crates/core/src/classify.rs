//! Isomorph-free generation of self-orthogonal codes.
//!
//! Classes of `[n, k]` codes come from lengthening every class of `[n-1, k-1]` and
//! zero-extending every class of `[n-1, k]`. Candidates are deduplicated by canonical
//! certificate and the result is checked against the mass formula.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use crate::code::{CodeRecord, LinearCode};
use crate::equivalence::{canonical_certificate, canonical_form, CanonicalCertificate};
use crate::error::{Error, Result};
use crate::extension::lengthen_all;
use crate::gf3::TritVector;
use crate::mass::{audit, MassAudit};

/// Minimum-weight floor used when lengthening; any nonzero self-orthogonal code has `d >= 3`.
pub const LENGTHEN_MIN_WEIGHT: usize = 3;

/// Candidates canonicalized per parallel batch.
const BATCH: usize = 2048;

/// Dimension of a maximal self-orthogonal code of length `n`.
pub fn maximal_dimension(n: usize) -> usize {
    match n % 4 {
        0 => n / 2,
        2 => n / 2 - 1,
        _ => (n - 1) / 2,
    }
}

/// Class representatives of self-orthogonal `[n, k]` codes with their mass audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationManifest {
    pub n: usize,
    pub k: usize,
    /// Sorted by certificate.
    pub representatives: Vec<CodeRecord>,
    pub counts_by_min_weight: BTreeMap<usize, usize>,
    pub audit: MassAudit,
    pub maximal_only: bool,
    pub provenance: String,
}

fn provenance() -> String {
    format!("terncode-core {}", env!("CARGO_PKG_VERSION"))
}

fn counts_by_min_weight(records: &[CodeRecord]) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for r in records {
        *counts.entry(r.min_weight).or_insert(0) += 1;
    }
    counts
}

impl ClassificationManifest {
    fn new(n: usize, k: usize, representatives: Vec<CodeRecord>) -> Result<Self> {
        let audit = audit(&representatives, n, k)?;
        Ok(ClassificationManifest {
            n,
            k,
            counts_by_min_weight: counts_by_min_weight(&representatives),
            representatives,
            audit,
            maximal_only: false,
            provenance: provenance(),
        })
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_complete(&self) -> bool {
        self.audit.is_complete()
    }

    pub fn residual(&self) -> &BigInt {
        &self.audit.residual
    }

    /// Text form: header, mass line, then one `CLASS` line and `k` rows per class.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "MANIFEST n={} k={} classes={} complete={}",
            self.n,
            self.k,
            self.class_count(),
            u8::from(self.is_complete())
        );
        let _ = writeln!(out, "MASS expected={} accumulated={}", self.audit.expected, self.audit.accumulated);
        for r in &self.representatives {
            let aut = r.aut_order.as_ref().expect("manifest records carry |Aut|");
            let cert = r.certificate.as_ref().expect("manifest records carry certificates");
            let _ = writeln!(out, "CLASS d={} dd={} aut={} cert={}", r.min_weight, r.dual_distance, aut, cert.to_hex());
            for row in r.code.rows() {
                let _ = writeln!(out, "{row}");
            }
        }
        let _ = writeln!(out, "# maximal_only={}", u8::from(self.maximal_only));
        let _ = writeln!(out, "# provenance: {}", self.provenance);
        out
    }

    /// Parses and re-verifies a manifest.
    ///
    /// Every class is checked for RREF storage, self-orthogonality, recorded weights and
    /// certificate order; `certificate_sample` classes (spread evenly) get their
    /// certificate recomputed; the mass sum is recomputed from the recorded group orders.
    pub fn from_text(text: &str, certificate_sample: usize) -> Result<Self> {
        let parse = |line: usize, msg: String| Error::Parse { line, msg };
        let lines: Vec<&str> = text.lines().collect();
        let header = lines.first().ok_or_else(|| parse(1, "empty manifest".into()))?;
        let fields = key_values(header, "MANIFEST", &["n", "k", "classes", "complete"])
            .ok_or_else(|| parse(1, "expected `MANIFEST n=<n> k=<k> classes=<c> complete=<0|1>`".into()))?;
        let num = |s: &str, line: usize| s.parse::<usize>().map_err(|_| parse(line, format!("bad number {s:?}")));
        let (n, k, classes) = (num(fields[0], 1)?, num(fields[1], 1)?, num(fields[2], 1)?);
        let complete = match fields[3] {
            "0" => false,
            "1" => true,
            other => return Err(parse(1, format!("bad complete flag {other:?}"))),
        };
        if n == 0 || n > crate::gf3::MAX_LENGTH || k > n {
            return Err(parse(1, "invalid code parameters".into()));
        }
        let mass_line = lines.get(1).ok_or_else(|| parse(2, "missing MASS line".into()))?;
        let mass = key_values(mass_line, "MASS", &["expected", "accumulated"])
            .ok_or_else(|| parse(2, "expected `MASS expected=<d> accumulated=<d>`".into()))?;
        let big = |s: &str, line: usize| s.parse::<BigUint>().map_err(|_| parse(line, format!("bad integer {s:?}")));
        let (expected, accumulated) = (big(mass[0], 2)?, big(mass[1], 2)?);

        let mut records = Vec::with_capacity(classes);
        let mut i = 2;
        while i < lines.len() && !lines[i].starts_with('#') {
            let line_no = i + 1;
            let f = key_values(lines[i], "CLASS", &["d", "dd", "aut", "cert"])
                .ok_or_else(|| parse(line_no, "expected `CLASS d=<d> dd=<dd> aut=<a> cert=<hex>`".into()))?;
            let (d, dd, aut) = (num(f[0], line_no)?, num(f[1], line_no)?, big(f[2], line_no)?);
            let cert = CanonicalCertificate::from_hex(f[3]).ok_or_else(|| parse(line_no, "bad certificate hex".into()))?;
            let mut rows = Vec::with_capacity(k);
            for r in 0..k {
                let row_line = i + 1 + r;
                let s = lines.get(row_line).ok_or_else(|| parse(row_line + 1, "missing generator row".into()))?;
                if s.len() != n {
                    return Err(parse(row_line + 1, format!("expected {n} trits")));
                }
                rows.push(TritVector::parse(s).map_err(|e| parse(row_line + 1, e.to_string()))?);
            }
            let code = LinearCode::from_rows(n, rows.clone())?;
            if code.rows() != rows.as_slice() {
                return Err(Error::Integrity(format!("class at line {line_no} is not stored in RREF")));
            }
            if !code.is_self_orthogonal() {
                return Err(Error::Integrity(format!("class at line {line_no} is not self-orthogonal")));
            }
            let record = CodeRecord::new(code)?;
            if record.min_weight != d || record.dual_distance != dd {
                return Err(Error::Integrity(format!("class at line {line_no}: recorded weights do not match")));
            }
            records.push(CodeRecord { aut_order: Some(aut), certificate: Some(cert), ..record });
            i += 1 + k;
        }
        let mut maximal_only = false;
        let mut prov = String::new();
        for line in &lines[i..] {
            if let Some(v) = line.strip_prefix("# maximal_only=") {
                maximal_only = v.trim() == "1";
            } else if let Some(v) = line.strip_prefix("# provenance: ") {
                prov = v.to_string();
            } else if !line.starts_with('#') && !line.trim().is_empty() {
                return Err(parse(i + 1, "unexpected content after comments".into()));
            }
        }

        if records.len() != classes {
            return Err(Error::Integrity(format!("header announces {classes} classes, found {}", records.len())));
        }
        let certs: Vec<&CanonicalCertificate> = records.iter().map(|r| r.certificate.as_ref().unwrap()).collect();
        if certs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Integrity("certificates are not strictly increasing".into()));
        }
        if certificate_sample > 0 && !records.is_empty() {
            let step = records.len().div_ceil(certificate_sample.min(records.len()));
            for r in records.iter().step_by(step) {
                if canonical_certificate(&r.code)? != *r.certificate.as_ref().unwrap() {
                    return Err(Error::Integrity(format!("certificate mismatch for {:?}", r.code)));
                }
            }
        }
        let audit = audit(&records, n, k).map_err(|e| Error::Integrity(format!("mass audit: {e}")))?;
        if audit.expected != expected || audit.accumulated != accumulated {
            return Err(Error::Integrity(format!(
                "mass audit gives expected={} accumulated={}, file records {expected} and {accumulated}",
                audit.expected, audit.accumulated
            )));
        }
        if complete != audit.is_complete() {
            return Err(Error::Integrity(format!("complete={} but residual is {}", u8::from(complete), audit.residual)));
        }
        if maximal_only {
            for r in &records {
                if !r.code.is_maximal_self_orthogonal()? {
                    return Err(Error::Integrity(format!("{:?} is not maximal", r.code)));
                }
            }
        }
        Ok(ClassificationManifest {
            n,
            k,
            counts_by_min_weight: counts_by_min_weight(&records),
            representatives: records,
            audit,
            maximal_only,
            provenance: prov,
        })
    }
}

/// Splits `TAG a=x b=y ...` into the values of the expected keys, in order.
fn key_values<'a>(line: &'a str, tag: &str, keys: &[&str]) -> Option<Vec<&'a str>> {
    let mut parts = line.split(' ');
    if parts.next()? != tag {
        return None;
    }
    let mut values = Vec::with_capacity(keys.len());
    for key in keys {
        let (k, v) = parts.next()?.split_once('=')?;
        if k != *key {
            return None;
        }
        values.push(v);
    }
    parts.next().is_none().then_some(values)
}

/// Writes a manifest file.
pub fn save_manifest(m: &ClassificationManifest, path: &Path) -> Result<()> {
    std::fs::write(path, m.to_text())?;
    Ok(())
}

/// Reads and verifies a manifest file, recomputing `certificate_sample` certificates.
pub fn load_manifest(path: &Path, certificate_sample: usize) -> Result<ClassificationManifest> {
    ClassificationManifest::from_text(&std::fs::read_to_string(path)?, certificate_sample)
}

/// Monomial invariants used to bucket candidates before comparing certificates.
fn fingerprint(code: &LinearCode) -> Result<Vec<u64>> {
    let mut fp = code.weight_distribution()?;
    fp.push(code.zero_coordinates().len() as u64);
    Ok(fp)
}

/// One representative per equivalence class, sorted by certificate.
///
/// Among equivalent candidates the smallest generator matrix is kept, so the output
/// does not depend on candidate order or thread scheduling.
pub fn dedupe_batch<I>(candidates: I) -> Result<Vec<CodeRecord>>
where
    I: IntoIterator<Item = LinearCode>,
{
    let mut dedup = Deduplicator::default();
    let mut batch = Vec::with_capacity(BATCH);
    for c in candidates {
        batch.push(c);
        if batch.len() == BATCH {
            dedup.absorb(std::mem::take(&mut batch))?;
        }
    }
    dedup.absorb(batch)?;
    dedup.finish()
}

struct Entry {
    code: LinearCode,
    aut: BigUint,
}

#[derive(Default)]
struct Deduplicator {
    buckets: HashMap<Vec<u64>, BTreeMap<CanonicalCertificate, Entry>>,
}

impl Deduplicator {
    fn absorb(&mut self, batch: Vec<LinearCode>) -> Result<()> {
        let forms: Vec<(LinearCode, Vec<u64>, CanonicalCertificate, BigUint)> = batch
            .into_par_iter()
            .map(|code| {
                let fp = fingerprint(&code)?;
                let form = canonical_form(&code)?;
                Ok((code, fp, form.certificate, form.aut.order))
            })
            .collect::<Result<_>>()?;
        for (code, fp, cert, aut) in forms {
            let bucket = self.buckets.entry(fp).or_default();
            match bucket.get_mut(&cert) {
                Some(entry) => {
                    if entry.aut != aut {
                        return Err(Error::Integrity(format!("equivalent codes with |Aut| {} and {aut}", entry.aut)));
                    }
                    if code.rows() < entry.code.rows() {
                        entry.code = code;
                    }
                }
                None => {
                    bucket.insert(cert, Entry { code, aut });
                }
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<Vec<CodeRecord>> {
        let mut entries: Vec<(CanonicalCertificate, Entry)> = self.buckets.into_values().flatten().collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        entries
            .into_par_iter()
            .map(|(cert, e)| {
                let mut r = CodeRecord::new(e.code)?;
                r.aut_order = Some(e.aut);
                r.certificate = Some(cert);
                Ok(r)
            })
            .collect()
    }
}

/// Memoizing driver for the recursive classification.
#[derive(Debug, Default)]
pub struct Classifier {
    cache_dir: Option<PathBuf>,
    resume: bool,
    certificate_sample: usize,
    memo: HashMap<(usize, usize), ClassificationManifest>,
}

impl Classifier {
    pub fn new() -> Self {
        Classifier::default()
    }

    /// Saves every subproblem's manifest under `dir`; with `resume`, existing files are
    /// loaded (and verified on `certificate_sample` classes) instead of recomputed.
    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>, resume: bool, certificate_sample: usize) -> Self {
        self.cache_dir = Some(dir.into());
        self.resume = resume;
        self.certificate_sample = certificate_sample;
        self
    }

    fn cache_path(&self, n: usize, k: usize) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(format!("so_n{n}_k{k}.manifest")))
    }

    /// Manifest for `[n, k]`, complete or not.
    pub fn manifest(&mut self, n: usize, k: usize) -> Result<&ClassificationManifest> {
        if n == 0 {
            return Err(Error::Argument("length must be positive".into()));
        }
        if !self.memo.contains_key(&(n, k)) {
            let m = self.compute(n, k)?;
            self.memo.insert((n, k), m);
        }
        Ok(&self.memo[&(n, k)])
    }

    fn compute(&mut self, n: usize, k: usize) -> Result<ClassificationManifest> {
        if let Some(path) = self.cache_path(n, k) {
            if self.resume && path.exists() {
                log::info!("loading [{n},{k}] from {}", path.display());
                return load_manifest(&path, self.certificate_sample);
            }
        }
        let records = if k == 0 {
            dedupe_batch([LinearCode::zero(n)])?
        } else if 2 * k > n || n == 1 {
            Vec::new()
        } else {
            let parents: Vec<LinearCode> =
                self.manifest(n - 1, k - 1)?.representatives.iter().map(|r| r.code.clone()).collect();
            let shorter: Vec<LinearCode> = if 2 * k < n {
                self.manifest(n - 1, k)?.representatives.iter().map(|r| r.code.clone()).collect()
            } else {
                Vec::new()
            };
            log::info!("classifying [{n},{k}] from {} + {} parents", parents.len(), shorter.len());
            let mut lengthened = Vec::new();
            for p in &parents {
                lengthened.extend(lengthen_all(p, LENGTHEN_MIN_WEIGHT)?.map(|c| c.result));
            }
            dedupe_batch(lengthened.into_iter().chain(shorter.iter().map(LinearCode::zero_extend)))?
        };
        let manifest = ClassificationManifest::new(n, k, records)?;
        log::info!("[{n},{k}]: {} classes, residual {}", manifest.class_count(), manifest.residual());
        if let Some(path) = self.cache_path(n, k) {
            save_manifest(&manifest, &path)?;
        }
        Ok(manifest)
    }

    /// All classes of self-orthogonal `[n, k]` codes; fails unless the mass audit closes.
    pub fn classify_so(&mut self, n: usize, k: usize) -> Result<ClassificationManifest> {
        let m = self.manifest(n, k)?;
        if !m.is_complete() {
            return Err(Error::Incomplete { n, k, residual: m.residual().to_string() });
        }
        Ok(m.clone())
    }

    /// Manifest of the maximal self-orthogonal codes of length `n`, complete or not.
    pub fn maximal_manifest(&mut self, n: usize) -> Result<ClassificationManifest> {
        let k = maximal_dimension(n);
        let mut m = self.manifest(n, k)?.clone();
        for r in &m.representatives {
            if !r.code.is_maximal_self_orthogonal()? {
                return Err(Error::Integrity(format!("{:?} has maximal dimension but is not maximal", r.code)));
            }
        }
        m.maximal_only = true;
        Ok(m)
    }

    /// Classes of maximal self-orthogonal codes of length `n`; fails unless the audit closes.
    pub fn classify_maximal(&mut self, n: usize) -> Result<ClassificationManifest> {
        let m = self.maximal_manifest(n)?;
        if !m.is_complete() {
            return Err(Error::Incomplete { n, k: m.k, residual: m.residual().to_string() });
        }
        Ok(m)
    }
}

/// All classes of self-orthogonal `[n, k]` codes, with a fresh in-memory cache.
pub fn classify_so(n: usize, k: usize) -> Result<ClassificationManifest> {
    Classifier::new().classify_so(n, k)
}

/// All classes of maximal self-orthogonal codes of length `n`.
pub fn classify_maximal(n: usize) -> Result<ClassificationManifest> {
    Classifier::new().classify_maximal(n)
}

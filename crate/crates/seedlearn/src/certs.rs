//! Certificates that a function has no s-term DNF.  When seed covering
//! gets stuck, every small term T that still covers a positive of the
//! residual has a projection inconsistent with any monomial, and that
//! inconsistency is witnessed by an agreement triple: two positives and
//! a negative lying between them (agreeing with both wherever they
//! agree).  The union of one triple per stuck term is a small point set
//! on which no s-term DNF is consistent.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::boolcore::{
    enumerate_terms, exact_min_dnf, monomial_consistency, term_count, Assignment, Dnf, PartialFn,
    Term,
};
use crate::coverlearn::cover_sample_with_bound;
use crate::error::{Error, Result};
use crate::seeds::seed_bound;

/// Provenance of three certificate points: the stuck term and its
/// agreement triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleRecord {
    pub term: Term,
    pub positives: [Assignment; 2],
    pub negative: Assignment,
}

/// A labeled point set on which no s-term DNF is consistent.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub n: u32,
    pub s: u32,
    /// Sorted, deduplicated (point, label) pairs.
    pub points: Vec<(Assignment, bool)>,
    pub triples: Vec<TripleRecord>,
}

impl Certificate {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn partial_fn(&self) -> PartialFn {
        let mut f = PartialFn::empty(self.n);
        for (a, label) in &self.points {
            f.insert(*a, *label).expect("certificate points are consistent");
        }
        f
    }
}

/// 3 · |{terms of size ≤ q}|, the worst-case certificate size.
pub fn certificate_size_bound(n: u32, q: u32) -> u64 {
    3 * term_count(n, q)
}

pub enum CertifyOutcome {
    /// A DNF of size ≤ candidate count consistent with f was found by
    /// covering; f may well have an s-term DNF.
    Cover(Dnf),
    /// Proof that no s-term DNF is consistent with f.
    Witness(Certificate),
}

/// Lex-least agreement triple for T: positives p < p' of f covered by
/// T, and a covered negative between them, minimizing (p, p', negative).
pub fn agreement_triple(
    f: &PartialFn,
    t: &Term,
) -> Option<(Assignment, Assignment, Assignment)> {
    let pos: Vec<&Assignment> = f.positives().iter().filter(|a| t.covers(a)).collect();
    let neg: Vec<&Assignment> = f.negatives().iter().filter(|a| t.covers(a)).collect();
    for (i, p1) in pos.iter().enumerate() {
        for p2 in &pos[i + 1..] {
            if let Some(r) = neg.iter().find(|r| r.between(p1, p2).expect("same dimension")) {
                return Some((**p1, **p2, **r));
            }
        }
    }
    None
}

/// Either covers the positives of f with seeds of size ≤ seed_bound(n, s)
/// or produces a certificate that f has no s-term DNF.
pub fn certify(f: &PartialFn, s: u32) -> Result<CertifyOutcome> {
    let n = f.n();
    let q = seed_bound(n, s);
    let cover = cover_sample_with_bound(f, q);
    if cover.succeeded() {
        return Ok(CertifyOutcome::Cover(cover.hypothesis));
    }

    // Residual: the covered positives are erased, negatives stay.
    let mut residual = PartialFn::empty(n);
    for a in &cover.leftover_positives {
        residual.insert(*a, true).expect("fresh partial function");
    }
    for a in f.negatives() {
        residual.insert(*a, false).expect("positives and negatives are disjoint");
    }

    let mut points: BTreeMap<Assignment, bool> = BTreeMap::new();
    let mut triples = Vec::new();
    for t in enumerate_terms(n, q) {
        if !residual.positives().iter().any(|a| t.covers(a)) {
            continue;
        }
        if monomial_consistency(&residual.project(&t)).is_some() {
            continue;
        }
        let (p1, p2, r) = agreement_triple(&residual, &t).ok_or_else(|| {
            Error::Internal(format!(
                "no agreement triple for stuck term {t}: its inconsistency needs more than three points to witness"
            ))
        })?;
        points.insert(p1, true);
        points.insert(p2, true);
        points.insert(r, false);
        triples.push(TripleRecord { term: t, positives: [p1, p2], negative: r });
    }
    debug_assert!(!triples.is_empty(), "stuck covering leaves at least one stuck term");
    Ok(CertifyOutcome::Witness(Certificate {
        n,
        s,
        points: points.into_iter().collect(),
        triples,
    }))
}

/// Independent check: the certificate's points admit no consistent DNF
/// with at most s terms.
pub fn verify_certificate(cert: &Certificate) -> Result<bool> {
    Ok(exact_min_dnf(&cert.partial_fn(), Some(cert.s as usize))?.is_none())
}

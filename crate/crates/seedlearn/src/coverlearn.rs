//! The seed covering method and the PAC learner built on it: repeatedly
//! find a seed of the residual sample, add the closure of the covered
//! positives as a term, and remove those positives.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use crate::boolcore::{closure, term_count, Assignment, Dnf, PartialFn, Term};
use crate::error::{Error, Result};
use crate::seeds::seed_bound;

/// Outcome of a covering run.  Success iff `leftover_positives` is
/// empty; failure is a value, not an error.
#[derive(Clone, Debug, Serialize)]
pub struct CoverResult {
    pub hypothesis: Dnf,
    /// (seed T, added term T') pairs in the order they were used.
    pub seeds_used: Vec<(Term, Term)>,
    pub leftover_positives: BTreeSet<Assignment>,
}

impl CoverResult {
    pub fn succeeded(&self) -> bool {
        self.leftover_positives.is_empty()
    }
}

/// Builds a DNF consistent with the sample by seed covering, with seed
/// candidates of size at most `seed_bound(n, s)`.
///
/// The scan order follows the pseudocode exactly: an outer loop over
/// passes, an inner full scan of the remaining candidate set Q in
/// canonical order, used seeds removed from Q.  A pass that makes no
/// progress can make none later, so it ends the run.
pub fn cover_sample(sample: &PartialFn, s: u32) -> CoverResult {
    assert!(s >= 1);
    let n = sample.n();
    let q = seed_bound(n, s);
    cover_sample_with_bound(sample, q)
}

pub fn cover_sample_with_bound(sample: &PartialFn, q: u32) -> CoverResult {
    let n = sample.n();
    let mut candidates: Vec<Option<Term>> =
        crate::boolcore::enumerate_terms(n, q).map(Some).collect();
    let mut positives = sample.positives().clone();
    let negatives = sample.negatives();
    let mut hypothesis = Dnf::constant_false(n);
    let mut seeds_used = Vec::new();
    let mut live = candidates.len();

    while live > 0 && !positives.is_empty() {
        let mut progressed = false;
        for slot in candidates.iter_mut() {
            if positives.is_empty() {
                break;
            }
            let Some(t) = slot else { continue };
            let covered: Vec<Assignment> =
                positives.iter().filter(|a| t.covers(a)).cloned().collect();
            if covered.is_empty() {
                continue;
            }
            let t_prime = closure(covered.iter(), n);
            if negatives.iter().any(|a| t_prime.covers(a)) {
                continue;
            }
            // T is a seed: add T' and retire both.
            for a in sample.positives() {
                if t_prime.covers(a) {
                    positives.remove(a);
                }
            }
            seeds_used.push((t.clone(), t_prime.clone()));
            hypothesis.push(t_prime);
            *slot = None;
            live -= 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    CoverResult { hypothesis, seeds_used, leftover_positives: positives }
}

/// Per-trial record of a PAC run.
#[derive(Clone, Debug, Serialize)]
pub struct PacTrial {
    /// Sample size drawn.
    pub m: u64,
    /// Always 0: the PAC learner asks no queries.
    pub queries: u64,
    pub size_h: usize,
    /// Exact error against the target under the uniform distribution.
    pub error_exact: f64,
    pub ok: bool,
}

/// Occam sample size: m = ⌈(1/eps)·(N_q·n·ln 3 + ln(1/delta))⌉ where
/// N_q counts the candidate seeds.
pub fn pac_sample_size(n: u32, s: u32, eps: f64, delta: f64) -> u64 {
    let nq = term_count(n, seed_bound(n, s)) as f64;
    ((nq * n as f64 * 3f64.ln() + (1.0 / delta).ln()) / eps).ceil() as u64
}

/// PAC-learns a DNF of size ≤ s from uniform examples of `target`,
/// returning the hypothesis (or the covering failure, which cannot
/// occur when the target really has ≤ s terms).
pub fn pac_learn_uniform(
    target: &Dnf,
    s: u32,
    eps: f64,
    delta: f64,
    rng: &mut impl Rng,
) -> Result<Dnf> {
    assert!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0);
    let n = target.n();
    let m = pac_sample_size(n, s, eps, delta);
    let mut sample = PartialFn::empty(n);
    for _ in 0..m {
        let a = Assignment::from_index(n, rng.gen_range(0..(1u32 << n)));
        sample.insert(a, target.eval(&a)).expect("target labels are consistent");
    }
    let result = cover_sample(&sample, s);
    if !result.succeeded() {
        return Err(Error::Protocol(format!(
            "covering failed with {} positives uncovered",
            result.leftover_positives.len()
        )));
    }
    Ok(result.hypothesis)
}

/// Exact disagreement probability under the uniform distribution.
pub fn exact_error(h: &Dnf, target: &Dnf) -> f64 {
    let n = target.n();
    let wrong = Assignment::all(n).filter(|a| h.eval(a) != target.eval(a)).count();
    wrong as f64 / (1u64 << n) as f64
}

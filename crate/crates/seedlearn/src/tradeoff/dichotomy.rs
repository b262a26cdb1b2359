//! The sparse-or-dense dichotomy: a t-term DNF either has a positive
//! assignment of weight ≤ r√n, or a negative assignment of weight close
//! to n obtained by zeroing a small greedy hitting set of variables.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::boolcore::{Assignment, Dnf, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Dichotomy {
    /// f(y) = 1 with |y| ≤ r√n.
    PositiveSparse { y: Assignment },
    /// f(z) = 0 with |z| = n − |V| ≥ n − (√n·ln t)/r − 1 and z all ones
    /// off V.
    NegativeDense { z: Assignment, v: BTreeSet<u32> },
}

/// Comparisons against r√n and √n are done squared, so the decision is
/// exact for rational r.
pub fn sparse_or_dense(f: &Dnf, r: Ratio<i64>) -> Result<Dichotomy> {
    if f.size() == 0 {
        return Err(Error::Contract("sparse_or_dense: f must have at least one term".into()));
    }
    if r < Ratio::from_integer(1) {
        return Err(Error::Contract("sparse_or_dense: r must be at least 1".into()));
    }
    let n = f.n() as i64;

    // Case 1: r ≥ √n — any minimally satisfied term is sparse enough.
    if r * r >= Ratio::from_integer(n) {
        let y = f.terms()[0].minimal_satisfying(f.n());
        return Ok(Dichotomy::PositiveSparse { y });
    }

    // Case 2: some term with fewer than r√n unnegated variables.
    for t in f.terms() {
        let u = t.positive_vars().count() as i64;
        if Ratio::from_integer(u * u) < r * r * Ratio::from_integer(n) {
            return Ok(Dichotomy::PositiveSparse { y: t.minimal_satisfying(f.n()) });
        }
    }

    // Case 3: every term is dense in unnegated variables; greedily hit
    // them all, then zero out the hitting set.
    let v = greedy_hitting_set(f.terms());
    let mut z = Assignment::from_index(f.n(), (1u32 << f.n()) - 1);
    for &var in &v {
        z = z.with(var, false);
    }
    debug_assert!(!f.eval(&z));
    Ok(Dichotomy::NegativeDense { z, v })
}

/// Repeatedly picks the variable occurring unnegated in the most
/// remaining terms (ties: lowest index) and removes the terms it hits.
pub fn greedy_hitting_set(terms: &[Term]) -> BTreeSet<u32> {
    let mut remaining: Vec<&Term> = terms.iter().collect();
    let mut v = BTreeSet::new();
    while !remaining.is_empty() {
        let mut counts: Vec<(u32, usize)> = Vec::new();
        for t in &remaining {
            for var in t.positive_vars() {
                match counts.iter_mut().find(|(w, _)| *w == var) {
                    Some((_, c)) => *c += 1,
                    None => counts.push((var, 1)),
                }
            }
        }
        let (best, _) = counts
            .into_iter()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("dense case: every term has an unnegated variable");
        v.insert(best);
        remaining.retain(|t| !t.positive_vars().any(|w| w == best));
    }
    v
}

/// The proof's bound on the greedy hitting set: |V| ≤ 1 + ⌊log_b t⌋
/// with b = 1/(1 − r/√n).  Float evaluation is fine here — it is a
/// diagnostic, not a decision.
pub fn hitting_set_bound(n: u32, t_count: usize, r: Ratio<i64>) -> f64 {
    let rf = *r.numer() as f64 / *r.denom() as f64;
    let b = 1.0 / (1.0 - rf / (n as f64).sqrt());
    1.0 + ((t_count as f64).ln() / b.ln()).floor()
}

/// The dense case's weight floor n − (√n·ln t)/r − 1.
pub fn dense_weight_floor(n: u32, t_count: usize, r: Ratio<i64>) -> f64 {
    let rf = *r.numer() as f64 / *r.denom() as f64;
    n as f64 - (n as f64).sqrt() * (t_count as f64).ln() / rf - 1.0
}

impl Dichotomy {
    /// Re-checks the invariants straight from the statement.
    pub fn check(&self, f: &Dnf, r: Ratio<i64>) -> bool {
        let n = f.n();
        match self {
            Dichotomy::PositiveSparse { y } => {
                let w = y.weight() as i64;
                f.eval(y)
                    && Ratio::from_integer(w * w) <= r * r * Ratio::from_integer(n as i64)
            }
            Dichotomy::NegativeDense { z, v } => {
                let w = z.weight();
                !f.eval(z)
                    && w < n
                    && w as f64 >= dense_weight_floor(n, f.size(), r)
                    && (1..=n).all(|var| z.get(var) != v.contains(&var))
                    && !v.is_empty()
            }
        }
    }
}

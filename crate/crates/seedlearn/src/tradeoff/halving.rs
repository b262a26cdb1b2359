//! The majority-vote halving learner over a finite formula class.  Each
//! query is the DNF expansion of the majority of a few sampled
//! consistent formulas, accepted only if it agrees with the full
//! consistent-set majority on the low-margin assignments Z; every
//! counterexample then shrinks the consistent set by a guaranteed
//! factor, whether it lands in Z or not.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolcore::{Assignment, Dnf, Literal, Term, TruthTable};
use crate::error::{Error, Result};

use super::adversary::{fingerprint_counterexample, VersionSpace};
use super::majority::{maj_to_dnf, majority_value};

pub const DEFAULT_MAX_RETRIES: u32 = 10_000;

pub enum HalvingTeacher {
    /// Fingerprint adversary: no fixed target, keeps the version space
    /// as large as possible.
    Worst,
    /// Honest teacher for a fixed target, lex-least counterexample.
    Lex(TruthTable),
}

#[derive(Clone, Debug, Serialize)]
pub struct ShrinkEntry {
    pub query_index: usize,
    pub hyp_terms: usize,
    pub before: usize,
    pub after: usize,
    /// None on the final accepting query.
    pub counterexample: Option<Assignment>,
    pub label: Option<bool>,
    /// Whether the counterexample fell in the low-margin set Z.
    pub in_z: Option<bool>,
    pub z_size: usize,
    pub retries: u32,
    /// True when the retry cap forced the exact full-majority fallback.
    pub fallback: bool,
}

#[derive(Debug, Serialize)]
pub struct HalvingResult {
    pub hypothesis: Dnf,
    pub queries: usize,
    pub log: Vec<ShrinkEntry>,
}

/// Z = {a : N_{a,min} < N / n^k}, computed exactly.
pub fn low_margin_set(vs: &VersionSpace, n: u32, k: u32) -> Result<Vec<Assignment>> {
    let nk = (n as u128)
        .checked_pow(k)
        .ok_or_else(|| Error::ResourceCap(format!("n^k overflows for n={n}, k={k}")))?;
    let total = vs.len() as u128;
    Ok(Assignment::all(n)
        .filter(|a| {
            let ones = vs.count_ones(a) as u128;
            let min = ones.min(total - ones);
            min.checked_mul(nk).is_some_and(|lhs| lhs < total)
        })
        .collect())
}

pub fn halving_learn(
    universe: Vec<Dnf>,
    teacher: &mut HalvingTeacher,
    k: u32,
    t_sample: usize,
    rng: &mut ChaCha8Rng,
    max_retries: u32,
) -> Result<HalvingResult> {
    if universe.is_empty() {
        return Err(Error::Contract("halving_learn: empty universe".into()));
    }
    if t_sample == 0 {
        return Err(Error::Contract("halving_learn: t_sample must be positive".into()));
    }
    let n = universe[0].n();
    let mut vs = VersionSpace::new(universe);
    let mut log = Vec::new();

    loop {
        let before = vs.len();
        let z = low_margin_set(&vs, n, k)?;
        let (h, retries, fallback) = propose(&vs, &z, t_sample, rng, max_retries)?;

        let answer = match teacher {
            HalvingTeacher::Worst => fingerprint_counterexample(&vs, &h)
                .map(|a| (a, !h.eval(&a))),
            HalvingTeacher::Lex(table) => Assignment::all(n)
                .find(|a| h.eval(a) != table.value(a))
                .map(|a| (a, table.value(&a))),
        };

        let query_index = log.len() + 1;
        match answer {
            None => {
                log.push(ShrinkEntry {
                    query_index,
                    hyp_terms: h.size(),
                    before,
                    after: before,
                    counterexample: None,
                    label: None,
                    in_z: None,
                    z_size: z.len(),
                    retries,
                    fallback,
                });
                let queries = log.len();
                return Ok(HalvingResult { hypothesis: h, queries, log });
            }
            Some((a, label)) => {
                vs.apply(&h, a, label)?;
                log.push(ShrinkEntry {
                    query_index,
                    hyp_terms: h.size(),
                    before,
                    after: vs.len(),
                    counterexample: Some(a),
                    label: Some(label),
                    in_z: Some(z.contains(&a)),
                    z_size: z.len(),
                    retries,
                    fallback,
                });
            }
        }
    }
}

/// Samples t_sample consistent formulas until their majority agrees
/// with the full-set majority on all of Z.  Exceeding the retry cap
/// falls back to the exact majority of the whole consistent set,
/// expanded from its truth table (always a valid hypothesis).
fn propose(
    vs: &VersionSpace,
    z: &[Assignment],
    t_sample: usize,
    rng: &mut ChaCha8Rng,
    max_retries: u32,
) -> Result<(Dnf, u32, bool)> {
    let indices: Vec<usize> = vs.remaining_indices().iter().copied().collect();
    for attempt in 0..max_retries {
        let picked: Vec<Dnf> = (0..t_sample)
            .map(|_| vs.formula(indices[rng.gen_range(0..indices.len())]).clone())
            .collect();
        if z.iter().all(|a| majority_value(&picked, a) == vs.majority(a)) {
            return Ok((maj_to_dnf(&picked)?, attempt, false));
        }
    }
    let n = vs.formula(indices[0]).n();
    let mut exact = Dnf::constant_false(n);
    for a in Assignment::all(n) {
        if vs.majority(&a) {
            exact.push(Term::from_literals((1..=n).map(|v| {
                if a.get(v) {
                    Literal::pos(v)
                } else {
                    Literal::neg(v)
                }
            })));
        }
    }
    Ok((exact, max_retries, true))
}

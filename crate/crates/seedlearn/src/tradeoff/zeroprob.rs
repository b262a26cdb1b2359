//! Exact check of the probability bound for a uniformly random member
//! of M(n,t,s): Pr[φ(z) = 0] ≤ (1 − ((|z| − s)/n)^s)^t, valid whenever
//! t ≤ C(n,s) − C(|z|,s).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::boolcore::{binomial, Assignment};
use crate::error::{Error, Result};

use super::class::enumerate_m;

#[derive(Clone, Debug)]
pub struct ZeroProbReport {
    pub n: u32,
    pub t: u32,
    pub s: u32,
    pub z: Assignment,
    /// (1 − ((|z| − s)/n)^s)^t, exact.
    pub bound: BigRational,
    /// Fraction of the enumerated class with φ(z) = 0, exact.
    pub exact: BigRational,
    pub ok: bool,
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero_prob_check(n: u32, t: u32, s: u32, z: Assignment, cap: u64) -> Result<ZeroProbReport> {
    if z.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: z.n() });
    }
    let w = z.weight();
    let budget = binomial(n as u64, s as u64) - binomial(w as u64, s as u64);
    if t as u64 > budget {
        return Err(Error::Contract(format!(
            "the bound requires t ≤ C(n,s) − C(|z|,s) = {budget}, got t = {t}"
        )));
    }
    // The bound is false for |z| < s (the per-term base goes negative
    // and an even s turns it into a vacuous or wrong bound), so that
    // degenerate corner is rejected rather than reported.
    if w < s {
        return Err(Error::Contract(format!(
            "the bound requires |z| ≥ s, got |z| = {w}, s = {s}"
        )));
    }

    let base = ratio(w as i64 - s as i64, n as i64);
    let per_term = BigRational::one() - pow(base, s);
    let bound = pow(per_term, t);

    let class = enumerate_m(n, t, s, cap)?;
    let total = class.formulas.len() as i64;
    let zero_count = class.formulas.iter().filter(|phi| !phi.eval(&z)).count() as i64;
    let exact = if total == 0 {
        BigRational::zero()
    } else {
        ratio(zero_count, total)
    };
    let ok = exact <= bound;
    Ok(ZeroProbReport { n, t, s, z, bound, exact, ok })
}

fn pow(base: BigRational, exp: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..exp {
        out *= &base;
    }
    out
}

//! The finite class M(n,t,s): all monotone DNFs with exactly t distinct
//! terms, each on exactly s distinct variables.

use itertools::Itertools;

use crate::boolcore::{binomial, Dnf, Literal, Term};
use crate::error::{Error, Result};

pub const DEFAULT_CLASS_CAP: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct MonotoneClass {
    pub n: u32,
    pub t: u32,
    pub s: u32,
    /// Canonical order: terms sorted by variable combination, formulas
    /// by their sorted term-index tuples.
    pub formulas: Vec<Dnf>,
}

/// |M(n,t,s)| = C(C(n,s), t), reported as None when it exceeds `cap`.
pub fn class_count(n: u32, t: u32, s: u32, cap: u64) -> Option<u64> {
    let terms = binomial(n as u64, s as u64) as u128;
    let mut count = 1u128;
    let t = t as u128;
    if t > terms {
        return Some(0);
    }
    let k = t.min(terms - t);
    for i in 0..k {
        count = count * (terms - i) / (i + 1);
        if count > cap as u128 {
            return None;
        }
    }
    Some(count as u64)
}

pub fn enumerate_m(n: u32, t: u32, s: u32, cap: u64) -> Result<MonotoneClass> {
    assert!(s >= 1 && s <= n);
    let count = class_count(n, t, s, cap).ok_or_else(|| {
        Error::ResourceCap(format!("|M({n},{t},{s})| exceeds the class cap {cap}"))
    })?;
    let terms: Vec<Term> = (1..=n)
        .combinations(s as usize)
        .map(|vars| Term::from_literals(vars.into_iter().map(Literal::pos)))
        .collect();
    let formulas: Vec<Dnf> = terms
        .iter()
        .combinations(t as usize)
        .map(|picked| Dnf::new(n, picked.into_iter().cloned().collect()))
        .collect();
    debug_assert_eq!(formulas.len() as u64, count);
    Ok(MonotoneClass { n, t, s, formulas })
}

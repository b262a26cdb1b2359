//! Majority of DNFs as a single DNF: expand the monotone majority over
//! the formula slots and distribute AND over OR.  Majority of t inputs
//! is 1 when at least ⌈t/2⌉ are 1 (ties go to 1).

use crate::boolcore::{Dnf, Term};
use crate::error::{Error, Result};
use itertools::Itertools;

pub fn maj_to_dnf(fs: &[Dnf]) -> Result<Dnf> {
    let Some(first) = fs.first() else {
        return Err(Error::Contract("maj_to_dnf: empty formula list".into()));
    };
    let n = first.n();
    if let Some(bad) = fs.iter().find(|f| f.n() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: bad.n() });
    }
    let t = fs.len();
    let threshold = t.div_ceil(2);

    let mut out = Dnf::constant_false(n);
    let mut seen = std::collections::BTreeSet::new();
    // OR over ⌈t/2⌉-subsets of slots of the AND of those slots: exactly
    // the monotone majority DNF, before substitution.
    for subset in (0..t).combinations(threshold) {
        let mut products = vec![Term::empty()];
        for &i in &subset {
            let mut next = Vec::new();
            for p in &products {
                for term in fs[i].terms() {
                    let conj = p.and(term);
                    if conj.satisfiable() {
                        next.push(conj);
                    }
                }
            }
            products = next;
        }
        for p in products {
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Pointwise majority value, for cross-checks.
pub fn majority_value(fs: &[Dnf], a: &crate::boolcore::Assignment) -> bool {
    2 * fs.iter().filter(|f| f.eval(a)).count() >= fs.len()
}

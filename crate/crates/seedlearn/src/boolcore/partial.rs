use std::collections::BTreeSet;

use super::assignment::{Assignment, Literal};
use super::dnf::Dnf;
use super::table::TruthTable;
use super::term::Term;
use crate::error::{Error, Result};

/// A partial Boolean function: defined on the listed positives and
/// negatives, ∗ everywhere else.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialFn {
    n: u32,
    positives: BTreeSet<Assignment>,
    negatives: BTreeSet<Assignment>,
}

impl PartialFn {
    pub fn new(
        n: u32,
        positives: BTreeSet<Assignment>,
        negatives: BTreeSet<Assignment>,
    ) -> Result<Self> {
        if let Some(a) = positives.intersection(&negatives).next() {
            return Err(Error::Contract(format!("assignment {a} labeled both 0 and 1")));
        }
        for a in positives.iter().chain(negatives.iter()) {
            if a.n() != n {
                return Err(Error::DimensionMismatch { expected: n, got: a.n() });
            }
        }
        Ok(PartialFn { n, positives, negatives })
    }

    pub fn empty(n: u32) -> Self {
        PartialFn { n, positives: BTreeSet::new(), negatives: BTreeSet::new() }
    }

    pub fn from_table(table: &TruthTable) -> Self {
        let mut positives = BTreeSet::new();
        let mut negatives = BTreeSet::new();
        for a in Assignment::all(table.n()) {
            if table.value(&a) {
                positives.insert(a);
            } else {
                negatives.insert(a);
            }
        }
        PartialFn { n: table.n(), positives, negatives }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn positives(&self) -> &BTreeSet<Assignment> {
        &self.positives
    }

    pub fn negatives(&self) -> &BTreeSet<Assignment> {
        &self.negatives
    }

    /// f(a): Some(bit) on defined points, None on ∗.
    pub fn value(&self, a: &Assignment) -> Option<bool> {
        if self.positives.contains(a) {
            Some(true)
        } else if self.negatives.contains(a) {
            Some(false)
        } else {
            None
        }
    }

    pub fn is_total(&self) -> bool {
        self.positives.len() + self.negatives.len() == 1usize << self.n
    }

    pub fn insert(&mut self, a: Assignment, label: bool) -> Result<()> {
        if self.value(&a) == Some(!label) {
            return Err(Error::Contract(format!("assignment {a} labeled both 0 and 1")));
        }
        if label {
            self.positives.insert(a);
        } else {
            self.negatives.insert(a);
        }
        Ok(())
    }

    /// Removes `a` from the defined points (making it ∗).
    pub fn undefine(&mut self, a: &Assignment) {
        self.positives.remove(a);
        self.negatives.remove(a);
    }

    /// The restriction of f to points covered by T, the operational form
    /// of the projection f_T (points keep their full dimension).
    pub fn project(&self, t: &Term) -> PartialFn {
        PartialFn {
            n: self.n,
            positives: self.positives.iter().filter(|a| t.covers(a)).cloned().collect(),
            negatives: self.negatives.iter().filter(|a| t.covers(a)).cloned().collect(),
        }
    }

    /// A formula is consistent with f if it agrees on every defined point.
    pub fn consistent_with(&self, phi: &Dnf) -> bool {
        self.positives.iter().all(|a| phi.eval(a)) && self.negatives.iter().all(|a| !phi.eval(a))
    }

    pub fn consistent_with_term(&self, t: &Term) -> bool {
        self.positives.iter().all(|a| t.eval(a)) && self.negatives.iter().all(|a| !t.eval(a))
    }
}

/// The conjunction of the literals satisfied by every assignment in the
/// set; for the empty set, the contradictory all-literals term.
pub fn closure<'a, I>(positives: I, n: u32) -> Term
where
    I: IntoIterator<Item = &'a Assignment>,
{
    let mut iter = positives.into_iter();
    let first = match iter.next() {
        Some(a) => a,
        None => return Term::all_literals(n),
    };
    let mut lits: Vec<Literal> = (1..=n)
        .map(|v| if first.get(v) { Literal::pos(v) } else { Literal::neg(v) })
        .collect();
    for a in iter {
        lits.retain(|l| l.satisfied_by(a));
    }
    Term::from_literals(lits)
}

/// Tests whether any monomial is consistent with f, returning one if so.
///
/// The candidate is the closure of f's positives: the least restrictive
/// monomial covering them all, so if it covers a negative, every other
/// covering monomial does too.
pub fn monomial_consistency(f: &PartialFn) -> Option<Term> {
    let t = closure(f.positives(), f.n());
    if f.negatives().iter().any(|a| t.covers(a)) {
        None
    } else {
        Some(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(n: u32, pos: &[&str], neg: &[&str]) -> PartialFn {
        PartialFn::new(
            n,
            pos.iter().map(|s| Assignment::parse(s).unwrap()).collect(),
            neg.iter().map(|s| Assignment::parse(s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn closure_intersects_literal_sets() {
        let a = [Assignment::parse("110").unwrap(), Assignment::parse("111").unwrap()];
        let t = closure(a.iter(), 3);
        assert_eq!(t, Term::from_literals([Literal::pos(1), Literal::pos(2)]));
    }

    #[test]
    fn closure_single_point_fixes_everything() {
        let a = [Assignment::parse("101").unwrap()];
        let t = closure(a.iter(), 3);
        assert_eq!(t, Term::from_literals([Literal::pos(1), Literal::neg(2), Literal::pos(3)]));
    }

    #[test]
    fn closure_empty_is_all_literals() {
        let t = closure([].iter(), 2);
        assert_eq!(t, Term::all_literals(2));
        assert!(t.is_contradictory());
    }

    #[test]
    fn monomial_consistency_basic() {
        let f = pf(3, &["110", "111"], &["011"]);
        let t = monomial_consistency(&f).unwrap();
        assert_eq!(t, Term::from_literals([Literal::pos(1), Literal::pos(2)]));

        let f = pf(2, &["10", "01"], &["11"]);
        assert!(monomial_consistency(&f).is_none());
    }

    #[test]
    fn monomial_consistency_vacuous_positives() {
        let f = pf(2, &[], &["00", "11"]);
        let t = monomial_consistency(&f).unwrap();
        assert_eq!(t, Term::all_literals(2));
    }

    #[test]
    fn conflicting_labels_rejected() {
        let a = Assignment::parse("01").unwrap();
        let mut f = PartialFn::empty(2);
        f.insert(a, true).unwrap();
        assert!(f.insert(a, false).is_err());
    }

    /// Exhaustive cross-check: monomial_consistency agrees with brute
    /// force over all 3^n monomials (plus the contradictory constant-0
    /// candidate, which covers the no-positives case), for all total
    /// functions at n = 3.
    #[test]
    fn oracle_equivalence_all_total_n3() {
        let n = 3;
        let mut monomials: Vec<Term> = crate::boolcore::enumerate::all_monomials(n).collect();
        monomials.push(Term::all_literals(n));
        for mask in 0u32..(1 << (1 << n)) {
            let table =
                TruthTable::new(n, (0..(1 << n)).map(|i| mask >> i & 1 == 1).collect()).unwrap();
            let f = PartialFn::from_table(&table);
            let fast = monomial_consistency(&f);
            let brute: Vec<&Term> =
                monomials.iter().filter(|t| f.consistent_with_term(t)).collect();
            assert_eq!(fast.is_some(), !brute.is_empty(), "mask {mask}");
            if let Some(t) = fast {
                assert!(brute.contains(&&t));
            }
        }
    }
}

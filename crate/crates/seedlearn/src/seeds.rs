//! Seeds: a seed of a partial function f is a monomial T covering at
//! least one positive example of f such that the projection f_T is
//! consistent with a monomial.  This module has the seed test on
//! samples, the constructive extraction from a consistent DNF, the
//! enumerative search, and the decision-tree construction.

use serde::Serialize;

use crate::boolcore::{
    enumerate_terms, monomial_consistency, Assignment, DecisionTree, Dnf, Literal,
    PartialFn, Term, TruthTable,
};
use crate::error::{Error, Result};

/// A validated seed: the term T, one positive example it covers, and a
/// monomial consistent with the projection f_T.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Seed {
    pub term: Term,
    pub witness: Assignment,
    pub residual: Term,
}

impl Seed {
    /// Independent validity check straight from the definition:
    /// the witness is a covered positive, and the residual agrees with
    /// f on every defined point covered by the seed term.
    pub fn validate(&self, f: &PartialFn) -> bool {
        if !self.term.covers(&self.witness) || f.value(&self.witness) != Some(true) {
            return false;
        }
        let covered = |a: &Assignment| self.term.covers(a);
        f.positives().iter().filter(|a| covered(a)).all(|a| self.residual.eval(a))
            && f.negatives().iter().filter(|a| covered(a)).all(|a| !self.residual.eval(a))
    }
}

/// The seed-size bound ⌈2√(n·ln s)⌉, clamped to [0, n].
pub fn seed_bound(n: u32, s: u32) -> u32 {
    assert!(n >= 1 && s >= 1);
    let raw = 2.0 * ((n as f64) * (s as f64).ln()).sqrt();
    (raw.ceil() as u32).min(n)
}

/// Tests whether T is a seed of f, returning the packaged seed if so.
///
/// The residual is the closure of the positives covered by T, which is
/// the least restrictive candidate monomial; if it covers a negative of
/// the projection then no monomial is consistent with f_T.
pub fn is_seed(f: &PartialFn, t: &Term) -> Option<Seed> {
    if t.is_contradictory() {
        return None;
    }
    let witness = f.positives().iter().find(|a| t.covers(a))?;
    let residual = monomial_consistency(&f.project(t))?;
    Some(Seed { term: t.clone(), witness: *witness, residual })
}

/// Scans the canonical term enumeration up to size `q` and returns the
/// first seed found.
pub fn find_seed_enumerate(f: &PartialFn, q: u32) -> Option<Seed> {
    enumerate_terms(f.n(), q).find_map(|t| is_seed(f, &t))
}

/// Exhaustive minimum seed size: the smallest |T| over all seeds of f,
/// found by scanning every term of every size.  Test oracle.
pub fn min_seed_size(f: &PartialFn) -> Option<u32> {
    let n = f.n();
    for q in 0..=n {
        let mut candidates = enumerate_terms(n, q).filter(|t| t.size() == q as usize);
        if candidates.any(|t| is_seed(f, &t).is_some()) {
            return Some(q);
        }
    }
    None
}

/// One event of the constructive extraction, for reproducible traces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ExtractEvent {
    /// Step 1: a term of size ≤ √(n ln s) was found; output Q ∪ P'.
    Output { term: Term },
    /// Step 2a: literal satisfied by all positives of f_Q moved to R.
    ToR { literal: Literal },
    /// Step 2b: complement of the most frequent literal added to Q.
    ToQ { literal: Literal, removed_terms: usize },
}

/// Runs the constructive proof procedure on a DNF `phi` consistent with
/// `f`, returning a seed of size at most `seed_bound(n, phi.size())`.
pub fn find_seed_constructive(f: &PartialFn, phi: &Dnf) -> Result<Seed> {
    find_seed_constructive_traced(f, phi).map(|(seed, _)| seed)
}

pub fn find_seed_constructive_traced(f: &PartialFn, phi: &Dnf) -> Result<(Seed, Vec<ExtractEvent>)> {
    let n = f.n();
    if f.positives().is_empty() {
        return Err(Error::Contract("find_seed_constructive: f has no positive example".into()));
    }
    if !f.consistent_with(phi) {
        return Err(Error::Contract("find_seed_constructive: phi inconsistent with f".into()));
    }
    let s = phi.size();
    debug_assert!(s >= 1, "consistent phi with a positive example has a term");
    let threshold = ((n as f64) * (s as f64).ln()).sqrt();

    let mut q = Term::empty();
    let mut r = Term::empty();
    // Working copy; drop terms covering no positive of f up front.
    let mut work: Vec<Term> = phi
        .terms()
        .iter()
        .filter(|t| f.positives().iter().any(|a| t.covers(a)))
        .cloned()
        .collect();
    let mut trace = Vec::new();

    // Each iteration removes a variable, so n + 1 passes suffice.
    for _ in 0..=n {
        // Step 1: a small enough term ends the procedure.
        if let Some(p) = work.iter().find(|t| t.size() as f64 <= threshold) {
            let term = q.and(p);
            trace.push(ExtractEvent::Output { term: term.clone() });
            let seed = is_seed(f, &term).ok_or_else(|| {
                Error::Internal(format!("constructive search output {term} is not a seed"))
            })?;
            return Ok((seed, trace));
        }

        let used_var =
            |v: u32| q.contains(&Literal::pos(v)) || q.contains(&Literal::neg(v))
                || r.contains(&Literal::pos(v)) || r.contains(&Literal::neg(v));

        // Step 2a: a literal satisfied by all positives of f_Q.
        let pos_fq: Vec<&Assignment> =
            f.positives().iter().filter(|a| q.covers(a)).collect();
        let common = (1..=n)
            .filter(|&v| !used_var(v))
            .flat_map(|v| [Literal::pos(v), Literal::neg(v)])
            .find(|l| pos_fq.iter().all(|a| l.satisfied_by(a)));
        if let Some(l) = common {
            r.insert(l);
            trace.push(ExtractEvent::ToR { literal: l });
            for t in &mut work {
                debug_assert!(!t.contains(&l.complement()), "no occurrences of the complement");
                t.remove(&l);
            }
            continue;
        }

        // Step 2b: kill the most frequent literal.
        let best = (1..=n)
            .filter(|&v| !used_var(v))
            .flat_map(|v| [Literal::pos(v), Literal::neg(v)])
            .map(|l| (l, work.iter().filter(|t| t.contains(&l)).count()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(l, _)| l)
            .ok_or_else(|| Error::Internal("constructive search: no literal left to branch on".into()))?;
        let before = work.len();
        work.retain(|t| !t.contains(&best));
        let bar = best.complement();
        for t in &mut work {
            t.remove(&bar);
        }
        q.insert(bar);
        let qr = q.and(&r);
        work.retain(|t| f.positives().iter().any(|a| qr.covers(a) && t.covers(a)));
        trace.push(ExtractEvent::ToQ { literal: bar, removed_terms: before - work.len() });
        if work.is_empty() {
            return Err(Error::Internal("constructive search: all terms eliminated".into()));
        }
    }
    Err(Error::Internal("constructive search: procedure did not terminate in n iterations".into()))
}

/// Constructs a seed of size ≤ ⌊log2 s1⌋ from a decision tree, via the
/// shallowest 1-leaf in key-node depth (key node: neither child is a
/// 0-leaf).  Path literals from key nodes form the seed; the rest form
/// the residual.
pub fn dtree_seed(tree: &DecisionTree, n: u32) -> Result<Seed> {
    let s1 = tree.s1();
    if s1 == 0 {
        return Err(Error::Contract("dtree_seed: tree has no 1-leaf".into()));
    }
    let mut best: Option<(usize, Term, Term)> = None;
    collect_paths(tree, &mut Vec::new(), &mut best);
    let (key_depth, q, r) = best.expect("tree with a 1-leaf yields a path");
    debug_assert!(key_depth as u32 <= (s1 as f64).log2().floor() as u32);

    let table = TruthTable::of_tree(tree, n)?;
    let f = PartialFn::from_table(&table);
    // The full path term pins down a positive reaching the leaf.
    let witness = q.and(&r).minimal_satisfying(n);
    debug_assert!(f.value(&witness) == Some(true));
    let seed = Seed { term: q, witness, residual: r };
    if !seed.validate(&f) || is_seed(&f, &seed.term).is_none() {
        return Err(Error::Internal("dtree_seed: constructed seed failed validation".into()));
    }
    Ok(seed)
}

/// Depth-first, 0-child first: ties in key-depth resolve to the
/// leftmost qualifying 1-leaf.
fn collect_paths(
    tree: &DecisionTree,
    path: &mut Vec<(Literal, bool)>,
    best: &mut Option<(usize, Term, Term)>,
) {
    match tree {
        DecisionTree::Leaf(true) => {
            let key_depth = path.iter().filter(|(_, key)| *key).count();
            if best.as_ref().is_none_or(|(d, _, _)| key_depth < *d) {
                let q = path.iter().filter(|(_, key)| *key).map(|(l, _)| *l).collect();
                let r = path.iter().filter(|(_, key)| !*key).map(|(l, _)| *l).collect();
                *best = Some((key_depth, q, r));
            }
        }
        DecisionTree::Leaf(false) => {}
        DecisionTree::Node { var, low, high } => {
            let key = tree.is_key_node();
            path.push((Literal::neg(*var), key));
            collect_paths(low, path, best);
            path.pop();
            path.push((Literal::pos(*var), key));
            collect_paths(high, path, best);
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolcore::exact_min_dnf;

    fn pos_term(vars: &[u32]) -> Term {
        Term::from_literals(vars.iter().map(|&v| Literal::pos(v)))
    }

    /// x1x2 ∨ x3x4 over n=4, as a total function.
    fn two_term_f() -> (PartialFn, Dnf) {
        let phi = Dnf::new(4, vec![pos_term(&[1, 2]), pos_term(&[3, 4])]);
        let f = PartialFn::from_table(&TruthTable::of_dnf(&phi).unwrap());
        (f, phi)
    }

    #[test]
    fn seed_bound_values() {
        assert_eq!(seed_bound(4, 2), 4);
        assert_eq!(seed_bound(7, 1), 0);
        assert_eq!(seed_bound(100, 100), 43);
    }

    #[test]
    fn is_seed_examples() {
        let (f, _) = two_term_f();
        let t = Term::from_literals([Literal::neg(1)]);
        let seed = is_seed(&f, &t).unwrap();
        assert_eq!(
            seed.residual,
            Term::from_literals([Literal::neg(1), Literal::pos(3), Literal::pos(4)])
        );
        assert!(seed.validate(&f));

        // x3 covers positives from both terms; the closure is x3 alone,
        // and negative 0010 satisfies it.
        assert!(is_seed(&f, &pos_term(&[3])).is_none());

        // A term covering no positive is not a seed.
        let t = Term::from_literals([Literal::neg(1), Literal::neg(2), Literal::neg(3), Literal::neg(4)]);
        assert!(is_seed(&f, &t).is_none());
    }

    #[test]
    fn constructive_hand_trace() {
        let (f, phi) = two_term_f();
        let (seed, trace) = find_seed_constructive_traced(&f, &phi).unwrap();
        assert_eq!(seed.term, Term::from_literals([Literal::neg(1), Literal::pos(4)]));
        assert!(seed.validate(&f));
        assert_eq!(trace[0], ExtractEvent::ToQ { literal: Literal::neg(1), removed_terms: 1 });
        assert_eq!(trace[1], ExtractEvent::ToR { literal: Literal::pos(3) });
        assert!(matches!(trace[2], ExtractEvent::Output { .. }));
    }

    #[test]
    fn constructive_constant_one() {
        let phi = Dnf::constant_true(3);
        let f = PartialFn::from_table(&TruthTable::of_dnf(&phi).unwrap());
        let seed = find_seed_constructive(&f, &phi).unwrap();
        assert_eq!(seed.term, Term::empty());
    }

    #[test]
    fn constructive_single_term() {
        // f = x1∧x2 over n=4, s=1: Step 2a fires twice, then the empty
        // residual term triggers Step 1; seed ∅ with residual x1∧x2.
        let phi = Dnf::new(4, vec![pos_term(&[1, 2])]);
        let f = PartialFn::from_table(&TruthTable::of_dnf(&phi).unwrap());
        let (seed, trace) = find_seed_constructive_traced(&f, &phi).unwrap();
        assert_eq!(seed.term, Term::empty());
        assert_eq!(seed.residual, pos_term(&[1, 2]));
        assert_eq!(trace.len(), 3);
        assert_eq!(trace[0], ExtractEvent::ToR { literal: Literal::pos(1) });
        assert_eq!(trace[1], ExtractEvent::ToR { literal: Literal::pos(2) });
    }

    #[test]
    fn constructive_rejects_bad_input() {
        let (f, _) = two_term_f();
        let wrong = Dnf::new(4, vec![pos_term(&[1])]);
        assert!(find_seed_constructive(&f, &wrong).is_err());
        let no_pos = PartialFn::from_table(&TruthTable::from_fn(2, |_| false).unwrap());
        assert!(find_seed_constructive(&no_pos, &Dnf::constant_false(2)).is_err());
    }

    #[test]
    fn enumerate_finds_first_canonical_seed() {
        let (f, _) = two_term_f();
        let seed = find_seed_enumerate(&f, 1).unwrap();
        assert_eq!(seed.term, Term::from_literals([Literal::neg(1)]));
    }

    #[test]
    fn parity_has_no_small_seed() {
        let f = PartialFn::from_table(&TruthTable::parity(8).unwrap());
        assert!(find_seed_enumerate(&f, 5).is_none());
    }

    #[test]
    fn positives_only_trivial_seed() {
        let mut f = PartialFn::empty(3);
        f.insert(Assignment::parse("101").unwrap(), true).unwrap();
        let seed = find_seed_enumerate(&f, 0).unwrap();
        assert_eq!(seed.term, Term::empty());
    }

    #[test]
    fn tightness_disjoint_terms() {
        // k disjoint monotone terms of size k on n = k^2 variables has
        // minimum seed size exactly k - 1, for k = 2 and 3.
        for k in 2u32..=3 {
            let n = k * k;
            let terms: Vec<Term> = (0..k)
                .map(|i| pos_term(&(1..=k).map(|j| i * k + j).collect::<Vec<_>>()))
                .collect();
            let phi = Dnf::new(n, terms);
            let f = PartialFn::from_table(&TruthTable::of_dnf(&phi).unwrap());
            assert_eq!(min_seed_size(&f), Some(k - 1), "k={k}");
        }
    }

    #[test]
    fn dtree_seed_examples() {
        // x1 AND x2: single 1-leaf, seed ∅ with residual x1∧x2.
        let and = DecisionTree::node(
            1,
            DecisionTree::leaf(false),
            DecisionTree::node(2, DecisionTree::leaf(false), DecisionTree::leaf(true)),
        );
        let seed = dtree_seed(&and, 2).unwrap();
        assert_eq!(seed.term, Term::empty());
        assert_eq!(seed.residual, pos_term(&[1, 2]));

        // XOR: s1 = 2, one key node (the root), seed size 1.
        let xor = DecisionTree::node(
            1,
            DecisionTree::node(2, DecisionTree::leaf(false), DecisionTree::leaf(true)),
            DecisionTree::node(2, DecisionTree::leaf(true), DecisionTree::leaf(false)),
        );
        let seed = dtree_seed(&xor, 2).unwrap();
        assert_eq!(seed.term, Term::from_literals([Literal::neg(1)]));
        assert_eq!(seed.residual, pos_term(&[2]));

        // A bare 1-leaf.
        let seed = dtree_seed(&DecisionTree::leaf(true), 2).unwrap();
        assert_eq!(seed.term, Term::empty());
        assert_eq!(seed.residual, Term::empty());

        assert!(dtree_seed(&DecisionTree::leaf(false), 2).is_err());
    }

    #[test]
    fn constructive_bound_on_minimal_dnfs() {
        // Bound check against exact minimum DNFs for every total
        // function on 3 variables with a positive example.
        for mask in 1u32..(1 << 8) {
            let tt = TruthTable::new(3, (0..8).map(|i| mask >> i & 1 == 1).collect()).unwrap();
            let f = PartialFn::from_table(&tt);
            let phi = exact_min_dnf(&f, None).unwrap().unwrap();
            let seed = find_seed_constructive(&f, &phi).unwrap();
            assert!(seed.validate(&f));
            assert!(seed.term.size() as u32 <= seed_bound(3, phi.size() as u32));
        }
    }
}

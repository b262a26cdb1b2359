use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::assignment::{Assignment, Literal};

/// A conjunction of literals, kept as a canonically ordered set.
///
/// A term may contain both x_i and ¬x_i; such a term is contradictory
/// (written T' ≡ 0) and covers no assignment.  The zero-literal term
/// covers every assignment.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Term {
    literals: BTreeSet<Literal>,
}

impl Term {
    /// The empty (constant-true) term.
    pub fn empty() -> Self {
        Term::default()
    }

    pub fn from_literals<I: IntoIterator<Item = Literal>>(lits: I) -> Self {
        Term { literals: lits.into_iter().collect() }
    }

    /// The conjunction of all 2n literals, used as the query learner's initial contradictory T'.
    pub fn all_literals(n: u32) -> Self {
        Term {
            literals: (1..=n).flat_map(|v| [Literal::pos(v), Literal::neg(v)]).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.literals.iter()
    }

    pub fn contains(&self, l: &Literal) -> bool {
        self.literals.contains(l)
    }

    pub fn insert(&mut self, l: Literal) {
        self.literals.insert(l);
    }

    pub fn remove(&mut self, l: &Literal) -> bool {
        self.literals.remove(l)
    }

    /// True iff the term contains no variable together with its negation.
    pub fn satisfiable(&self) -> bool {
        self.literals.iter().all(|l| !self.literals.contains(&l.complement()))
    }

    pub fn is_contradictory(&self) -> bool {
        !self.satisfiable()
    }

    /// Term evaluation: 1 iff every literal is satisfied.
    pub fn eval(&self, a: &Assignment) -> bool {
        self.literals.iter().all(|l| l.satisfied_by(a))
    }

    pub fn covers(&self, a: &Assignment) -> bool {
        self.eval(a)
    }

    /// Conjunction of two terms.
    pub fn and(&self, other: &Term) -> Term {
        Term { literals: self.literals.union(&other.literals).cloned().collect() }
    }

    /// Variables appearing unnegated.
    pub fn positive_vars(&self) -> impl Iterator<Item = u32> + '_ {
        self.literals.iter().filter(|l| !l.negated()).map(|l| l.var())
    }

    /// The minimal-weight assignment satisfying the term: unnegated
    /// variables set to 1, everything else 0.  Only meaningful for
    /// satisfiable terms.
    pub fn minimal_satisfying(&self, n: u32) -> Assignment {
        debug_assert!(self.satisfiable());
        let mut a = Assignment::zeros(n);
        for v in self.positive_vars() {
            a = a.with(v, true);
        }
        a
    }
}

impl FromIterator<Literal> for Term {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        Term::from_literals(iter)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return write!(f, "T");
        }
        let parts: Vec<String> = self.literals.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("&"))
    }
}

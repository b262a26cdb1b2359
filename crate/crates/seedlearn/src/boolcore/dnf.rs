use std::fmt;

use serde::{Deserialize, Serialize};

use super::assignment::Assignment;
use super::term::Term;

/// A DNF formula over n variables: an OR of terms.
///
/// The empty term list is the constant 0 (size 0); the constant 1 is a
/// single zero-literal term (size 1).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dnf {
    n: u32,
    terms: Vec<Term>,
}

impl Dnf {
    pub fn new(n: u32, terms: Vec<Term>) -> Self {
        Dnf { n, terms }
    }

    /// The constant 0.
    pub fn constant_false(n: u32) -> Self {
        Dnf { n, terms: Vec::new() }
    }

    /// The constant 1: a single empty term.
    pub fn constant_true(n: u32) -> Self {
        Dnf { n, terms: vec![Term::empty()] }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of terms.
    pub fn size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn push(&mut self, t: Term) {
        self.terms.push(t);
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        debug_assert_eq!(a.n(), self.n);
        self.terms.iter().any(|t| t.eval(a))
    }

    /// True iff the two formulas compute the same total function.
    pub fn equivalent(&self, other: &Dnf) -> bool {
        self.n == other.n && Assignment::all(self.n).all(|a| self.eval(&a) == other.eval(&a))
    }
}

impl fmt::Debug for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "F");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" | "))
    }
}

//! Version space over a finite formula class and the fingerprint
//! adversary: answer each equivalence query with the assignment that
//! keeps the most candidate targets alive.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::boolcore::{Assignment, Dnf};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct HistoryEntry {
    pub query: Dnf,
    pub counterexample: Assignment,
    pub label: bool,
    pub eliminated: usize,
}

/// The set of class members consistent with all answers so far.
#[derive(Clone, Debug)]
pub struct VersionSpace {
    formulas: Vec<Dnf>,
    remaining: BTreeSet<usize>,
    history: Vec<HistoryEntry>,
}

impl VersionSpace {
    pub fn new(formulas: Vec<Dnf>) -> Self {
        let remaining = (0..formulas.len()).collect();
        VersionSpace { formulas, remaining, history: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.remaining.len()
    }

    pub fn is_empty(&self) -> bool {
        self.remaining.is_empty()
    }

    pub fn remaining(&self) -> impl Iterator<Item = &Dnf> {
        self.remaining.iter().map(|&i| &self.formulas[i])
    }

    pub fn remaining_indices(&self) -> &BTreeSet<usize> {
        &self.remaining
    }

    pub fn formula(&self, i: usize) -> &Dnf {
        &self.formulas[i]
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    /// N_{a,1}: remaining formulas with φ(a) = 1.
    pub fn count_ones(&self, a: &Assignment) -> usize {
        self.remaining().filter(|phi| phi.eval(a)).count()
    }

    /// Majority vote of the remaining formulas at a; ties go to 1.
    pub fn majority(&self, a: &Assignment) -> bool {
        2 * self.count_ones(a) >= self.len()
    }

    /// Applies a counterexample (a, label), dropping every remaining
    /// formula that disagrees with the label.  Returns the eliminated
    /// count; emptying the space is a protocol error.
    pub fn apply(&mut self, query: &Dnf, a: Assignment, label: bool) -> Result<usize> {
        let doomed: Vec<usize> = self
            .remaining
            .iter()
            .copied()
            .filter(|&i| self.formulas[i].eval(&a) != label)
            .collect();
        let eliminated = doomed.len();
        if eliminated == self.remaining.len() {
            return Err(Error::Protocol(
                "counterexample eliminated every remaining formula".into(),
            ));
        }
        for i in doomed {
            self.remaining.remove(&i);
        }
        self.history.push(HistoryEntry { query: query.clone(), counterexample: a, label, eliminated });
        Ok(eliminated)
    }
}

/// The assignment maximizing the number of remaining formulas that
/// disagree with h (ties: lex-least), or None when h agrees with every
/// remaining formula everywhere.  Answering it with label ¬h(a)
/// eliminates only the formulas agreeing with h at a.
pub fn fingerprint_counterexample(vs: &VersionSpace, h: &Dnf) -> Option<Assignment> {
    let n = h.n();
    let mut best: Option<(Assignment, usize)> = None;
    for a in Assignment::all(n) {
        let disagree = vs.remaining().filter(|phi| phi.eval(&a) != h.eval(&a)).count();
        if best.is_none_or(|(_, c)| disagree > c) {
            best = Some((a, disagree));
        }
    }
    match best {
        Some((a, c)) if c > 0 => Some(a),
        _ => None,
    }
}

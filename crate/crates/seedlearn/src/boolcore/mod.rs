//! Canonical representations and evaluation for assignments, terms,
//! DNFs, partial functions, decision trees and truth tables, plus the
//! exhaustive oracles (monomial consistency, exact minimum DNF) and the
//! text codecs.
//!
//! All values are immutable after construction and every operation is a
//! pure function of its inputs.

pub mod assignment;
pub mod codec;
pub mod dnf;
pub mod enumerate;
pub mod mindnf;
pub mod partial;
pub mod table;
pub mod term;
pub mod tree;

pub use assignment::{Assignment, Literal, MAX_N};
pub use dnf::Dnf;
pub use enumerate::{all_monomials, binomial, enumerate_terms, term_count};
pub use mindnf::{exact_min_dnf, exact_min_dnf_capped, MINDNF_MAX_N};
pub use partial::{closure, monomial_consistency, PartialFn};
pub use table::TruthTable;
pub use term::Term;
pub use tree::DecisionTree;

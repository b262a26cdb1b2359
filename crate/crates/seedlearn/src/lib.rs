//! Proper DNF learning with seeds.
//!
//! A seed of a partial Boolean function f is a small monomial T that
//! covers at least one positive example of f and whose projection f_T
//! is consistent with a monomial.  Everything here builds on that one
//! notion: a constructive seed extraction from a consistent DNF, a
//! covering-based PAC learner, a proper equivalence-query learner, DNF
//! size certificates, and the query/size tradeoff machinery (fingerprint
//! adversary, monotone class enumeration, majority halving learner).
//! All of it is exhaustive-checkable at small n.

pub mod boolcore;
pub mod certs;
pub mod cli;
pub mod coverlearn;
pub mod eqlearn;
pub mod error;
pub mod seeds;
pub mod tradeoff;

pub use error::{Error, Result};

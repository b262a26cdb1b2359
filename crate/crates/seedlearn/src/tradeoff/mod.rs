//! Query/size tradeoff machinery: the monotone class M(n,t,s), the
//! sparse-or-dense dichotomy with its greedy hitting set, the exact
//! random-formula probability check, the fingerprint adversary, the
//! majority-of-DNFs expansion, and the halving learner built on it.

pub mod adversary;
pub mod class;
pub mod dichotomy;
pub mod zeroprob;
pub mod halving;
pub mod majority;

pub use adversary::{fingerprint_counterexample, HistoryEntry, VersionSpace};
pub use class::{class_count, enumerate_m, MonotoneClass, DEFAULT_CLASS_CAP};
pub use dichotomy::{sparse_or_dense, Dichotomy};
pub use zeroprob::{zero_prob_check, ZeroProbReport};
pub use halving::{halving_learn, HalvingResult, HalvingTeacher, ShrinkEntry, DEFAULT_MAX_RETRIES};
pub use majority::maj_to_dnf;

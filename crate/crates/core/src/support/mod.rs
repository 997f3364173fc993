//! Secure verification of global frequency and of rule confidence.
//!
//! Each player turns its local counts into an integer `Δ_m` whose sum is
//! non-negative exactly when the global test passes. The `Δ_m` are summed
//! with additive sharing over `Z_q`, `q` odd and larger than twice the
//! largest possible `|Σ Δ_m|`. By default `P_M` withholds its share, so the
//! sum stays hidden and only the sign bit leaves a two-party comparison
//! between `P1` and `P_M` ([`Comparator`]).

mod check;
mod compare;
mod rules;
mod sum;

pub use check::{
    secure_confidence_check, secure_frequency_check, CheckOutcome, LocalCounts, SumMode,
};
pub use compare::{ideal_compare, Comparator, IdealComparator};
pub use rules::{enumerate_candidate_rules, write_rules_csv, AssociationRule, CandidateRule};
pub use sum::{secure_sum_revealed, secure_sum_withheld};

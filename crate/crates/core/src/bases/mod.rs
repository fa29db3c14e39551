//! Bases and generalized bases: completeness checks, exhaustive searches,
//! indistinguishing numbers, sufficient conditions for `b ≤ 2`, and the
//! constructive builders for wreath products and exponentiations.

mod builders;
mod numbers;
mod search;

pub use builders::{
    build_exponentiation_base, build_thin_generalized_base, build_wreath_generalized_base, is_proper,
    is_thin, BuiltBase,
};
pub use numbers::{
    indistinguishing_numbers, sufficient_base2_checks, Base2Verdicts, CountingVerdict, Indistinguishing,
    IndistinguishingVerdict, SemiregularVerdict,
};
pub use search::{
    base_number_search, bounded_base_search, greedy_base, is_base, is_generalized_base, BaseCertificate,
    BaseKind, DEFAULT_BUDGET,
};

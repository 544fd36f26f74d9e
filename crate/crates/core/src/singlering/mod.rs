//! Exact trace moments of `A = U T V` through their permutation expansions,
//! the constant-free theorem bound, and the combinatorial lemmas behind it.

mod bound;
mod census;
mod expansion;
mod lemma;
mod profile;
mod trace;

pub use bound::{bound_core, theorem_bound, BoundMode, BoundReport};
pub use census::{composition_census, CensusReport};
pub use expansion::{
    f_i, f_i_class_counts, f_i_cosets, f_i_wg_sum, g_i, g_i_class_counts, g_i_cosets, g_i_wg_sum,
    LRange,
};
pub use lemma::{
    lemma_bound, sweep_counting_lemma, verify_counting_lemma, LemmaCheck, LemmaRow,
    MAX_LEMMA_DEGREE,
};
pub use profile::{ProfileSource, SingularProfile};
pub use trace::{
    exactly_computable, pattern_terms, trace_moment_sq, trace_moment_uu, PatternTerm,
    ENUMERATION_BUDGET,
};

//! Permutations of `{1, …, k}`, the subgroup `S_k⁰`, stabilizers and cosets,
//! and monotone transposition factorizations.

mod factorization;
mod group;
mod perm;

pub use factorization::{
    canonical_minimal_factorization, count_monotone_factorizations, monotone_counts,
    support_window, MonotoneCounts, MonotoneFactorization, Monotonicity,
};
pub use group::{
    coset_representatives, enumerate_sk0, integer_partitions, set_partitions, stabilizer,
    symmetric_group, ConjugacyClasses, Permutations, Universe, MAX_DEGREE,
};
pub use perm::{IndexTuple, Permutation};

/// `transposition_distance` as a free function.
pub fn transposition_distance(p: &Permutation) -> usize {
    p.transposition_distance()
}

/// `p ∘ q`.
pub fn compose(p: &Permutation, q: &Permutation) -> crate::Result<Permutation> {
    p.compose(q)
}

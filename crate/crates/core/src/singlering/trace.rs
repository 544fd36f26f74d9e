//! Exact `E Tr(Aᵏ (Aᵏ)*)` and `E |Tr Aᵏ|²` for `A = U T V`.
//!
//! Both are `Σ_i s_{i1}² ⋯ s_{ik}² · X_i` over `i ∈ {1..n}ᵏ`, with `X_i = F_i`
//! or `G_i` depending only on the equality pattern of `i`. The sum is
//! regrouped by pattern: for a pattern with block sizes `λ_1, …, λ_p`, the
//! weight `Σ_{distinct v_1..v_p} Π x_{v_b}^{λ_b}` (with `x = s²`) follows from
//! power sums by Möbius inversion over set partitions of the blocks.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::expansion::{f_i, g_i};
use super::profile::SingularProfile;
use crate::error::{Error, Result};
use crate::permgroup::{set_partitions, IndexTuple};
use crate::rational::{self, Rational};

/// Largest `nᵏ` accepted by the exact trace routines.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

/// One equality pattern of `i ∈ {1..n}ᵏ` together with its total weight.
#[derive(Clone, Debug)]
pub struct PatternTerm {
    /// Restricted growth string, labels `0..p`.
    pub pattern: Vec<usize>,
    /// `Σ s_{i1}² ⋯ s_{ik}²` over all `i` with this pattern.
    pub weight: Rational,
}

impl PatternTerm {
    pub fn block_sizes(&self) -> Vec<usize> {
        let blocks = self.pattern.iter().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0; blocks];
        for &b in &self.pattern {
            sizes[b] += 1;
        }
        sizes
    }

    /// The canonical representative `(pattern + 1)` as a tuple in `{1..n}ᵏ`.
    pub fn representative(&self, n: usize) -> IndexTuple {
        IndexTuple::new(self.pattern.iter().map(|b| b + 1).collect(), n).expect("blocks <= n")
    }
}

fn check_budget(k: usize, n: usize) -> Result<()> {
    let size = (n as u128).checked_pow(k as u32);
    match size {
        Some(s) if s <= ENUMERATION_BUDGET => Ok(()),
        _ => Err(Error::BudgetExceeded(format!(
            "n^k = {n}^{k} exceeds {ENUMERATION_BUDGET}"
        ))),
    }
}

/// `Σ_{v_1..v_p distinct} Π_b x_{v_b}^{λ_b}` from the power sums
/// `P(m) = Σ_v x_v^m`: sum over set partitions π of the blocks of
/// `Π_{C ∈ π} (-1)^{|C|-1} (|C|-1)! · P(Σ_{b ∈ C} λ_b)`.
fn injective_weight(sizes: &[usize], power_sums: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for partition in set_partitions(sizes.len()) {
        let groups = partition.iter().max().map_or(0, |m| m + 1);
        let mut exponent = vec![0usize; groups];
        let mut members = vec![0usize; groups];
        for (b, &g) in partition.iter().enumerate() {
            exponent[g] += sizes[b];
            members[g] += 1;
        }
        let mut term = Rational::one();
        for g in 0..groups {
            let mobius = rational::factorial(members[g] - 1);
            let signed = if members[g] % 2 == 0 { -mobius } else { mobius };
            term *= Rational::from_integer(signed) * &power_sums[exponent[g]];
        }
        total += term;
    }
    total
}

/// All equality patterns realisable in `{1..n}ᵏ` with their weights.
pub fn pattern_terms(k: usize, profile: &SingularProfile) -> Vec<PatternTerm> {
    let n = profile.len();
    let power_sums: Vec<Rational> = (0..=k).map(|m| profile.square_power_sum(m)).collect();
    set_partitions(k)
        .into_iter()
        .filter(|p| p.iter().max().map_or(0, |m| m + 1) <= n)
        .map(|pattern| {
            let mut term = PatternTerm {
                pattern,
                weight: Rational::zero(),
            };
            term.weight = injective_weight(&term.block_sizes(), &power_sums);
            term
        })
        .collect()
}

fn pattern_sum(
    k: usize,
    profile: &SingularProfile,
    coefficient: impl Fn(&IndexTuple) -> Result<Rational> + Sync,
) -> Result<Rational> {
    let n = profile.len();
    let parts: Vec<Rational> = pattern_terms(k, profile)
        .into_par_iter()
        .map(|term| Ok(coefficient(&term.representative(n))? * term.weight))
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().sum())
}

fn scalar_case(k: usize, profile: &SingularProfile) -> Rational {
    rational::pow(&profile.values()[0], 2 * k)
}

/// `E Tr(Aᵏ (Aᵏ)*)`, exact. Needs `n ≥ k - 1` so the degree-`k-1` Weingarten
/// function is defined, and `nᵏ ≤` [`ENUMERATION_BUDGET`].
pub fn trace_moment_uu(k: usize, profile: &SingularProfile) -> Result<Rational> {
    let n = profile.len();
    if k == 0 {
        return Ok(rational::int(n as i64));
    }
    if n == 1 {
        return Ok(scalar_case(k, profile));
    }
    if k == 1 {
        return Ok(profile.square_power_sum(1));
    }
    check_budget(k, n)?;
    if n + 1 < k {
        return Err(Error::SingularSystem { k: k - 1, n });
    }
    pattern_sum(k, profile, f_i)
}

/// `E |Tr Aᵏ|²`, exact. Needs `n ≥ k` and `nᵏ ≤` [`ENUMERATION_BUDGET`].
pub fn trace_moment_sq(k: usize, profile: &SingularProfile) -> Result<Rational> {
    let n = profile.len();
    if k == 0 {
        return Ok(rational::int((n * n) as i64));
    }
    if n == 1 {
        return Ok(scalar_case(k, profile));
    }
    check_budget(k, n)?;
    if n < k {
        return Err(Error::SingularSystem { k, n });
    }
    pattern_sum(k, profile, g_i)
}

/// Whether [`trace_moment_uu`] / [`trace_moment_sq`] can be evaluated exactly.
pub fn exactly_computable(k: usize, n: usize, squared_trace: bool) -> bool {
    let budget = (n as u128)
        .checked_pow(k as u32)
        .is_some_and(|s| s <= ENUMERATION_BUDGET);
    let dims = n == 1 || if squared_trace { n >= k } else { n + 1 >= k };
    budget && dims && k <= crate::permgroup::MAX_DEGREE
}

/// `Σ_i Π s_{iℓ}² · h(pattern)` for any pattern function `h`; used for the
/// combinatorial census.
pub(crate) fn pattern_weighted_sum(
    k: usize,
    profile: &SingularProfile,
    mut h: impl FnMut(&PatternTerm) -> BigInt,
) -> Rational {
    pattern_terms(k, profile)
        .iter()
        .map(|t| Rational::from_integer(h(t)) * &t.weight)
        .sum()
}

use num_traits::{One, Zero};

use super::exact::wg_exact;
use crate::error::{Error, Result};
use crate::permgroup::{monotone_counts, ConjugacyClasses, Permutation};
use crate::rational::{self, int, Rational};

/// Default truncation order `k² + 4`.
pub fn default_r_max(k: usize) -> usize {
    k * k + 4
}

/// `Wg(π)` at finite `n` via the monotone-factorization series, with the
/// exact oracle value alongside when `n ≥ k`.
#[derive(Clone, Debug)]
pub struct WeingartenValue {
    pub k: usize,
    pub n: usize,
    pub pi: Permutation,
    /// Oracle value; `None` when the Gram system is singular (`n < k`).
    pub exact: Option<Rational>,
    /// Partial sums for truncation orders `0..=r_max`.
    pub partial_sums: Vec<Rational>,
    /// Bound on `|Wg(π) - partial_sums[r_max]|`; `None` marks an infinite
    /// bound (`k² ≥ 2n`).
    pub tail_bound: Option<Rational>,
}

impl WeingartenValue {
    pub fn r_max(&self) -> usize {
        self.partial_sums.len() - 1
    }

    pub fn series_partial(&self) -> &Rational {
        self.partial_sums.last().expect("at least the r = 0 term")
    }

    /// `|exact - series_partial|`, when the oracle value exists.
    pub fn truncation_error(&self) -> Option<Rational> {
        self.exact
            .as_ref()
            .map(|e| rational::abs(&(e - self.series_partial())))
    }

    /// Whether the observed truncation error respects the tail bound.
    pub fn within_tail_bound(&self) -> Option<bool> {
        match (self.truncation_error(), &self.tail_bound) {
            (Some(err), Some(bound)) => Some(&err <= bound),
            _ => None,
        }
    }
}

/// Geometric tail `n^{-k} Σ_{r ≥ start} B^{r-1} n^{-r}` with `B = k(k-1)/2`,
/// from `c_r(π) ≤ B^{r-1}` for `r ≥ 1`.
pub fn series_tail_bound(k: usize, n: usize, start: usize) -> Option<Rational> {
    if k * k >= 2 * n {
        return None;
    }
    let pairs = (k * (k - 1) / 2) as i64;
    if pairs == 0 {
        // No transposition exists, so c_r = 0 for every r ≥ 1.
        return Some(Rational::zero());
    }
    let start = start.max(1);
    let n_r = int(n as i64);
    let x = Rational::new(pairs.into(), (n as i64).into());
    let head = rational::pow(&int(pairs), start - 1) / rational::pow(&n_r, start + k);
    Some(head / (Rational::one() - x))
}

/// Truncates `Wg(π) = n^{-k} Σ_r (-1)^r c_r(π) n^{-r}` at `r_max`.
pub fn wg_series(k: usize, n: usize, pi: &Permutation, r_max: usize) -> Result<WeingartenValue> {
    if pi.degree() != k {
        return Err(Error::DegreeMismatch {
            left: pi.degree(),
            right: k,
        });
    }
    if n == 0 {
        return Err(Error::OutOfRange("dimension n must be positive".into()));
    }
    let counts = monotone_counts(k, r_max)?;
    let class = ConjugacyClasses::get(k)?.class_of(pi);
    let n_r = int(n as i64);
    let scale = rational::pow(&n_r, k).recip();
    let mut partial_sums = Vec::with_capacity(r_max + 1);
    let mut acc = Rational::zero();
    let mut n_pow = Rational::one();
    for r in 0..=r_max {
        let term = Rational::from_integer(counts.by_class(class, r).into()) / &n_pow;
        if r % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        partial_sums.push(&acc * &scale);
        n_pow *= &n_r;
    }
    let exact = if n >= k {
        Some(wg_exact(k, n, pi)?)
    } else {
        None
    };
    let start = (r_max + 1).max(pi.transposition_distance());
    Ok(WeingartenValue {
        k,
        n,
        pi: pi.clone(),
        exact,
        partial_sums,
        tail_bound: series_tail_bound(k, n, start),
    })
}

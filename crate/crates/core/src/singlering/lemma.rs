//! Exhaustive check of the counting bound
//! `#{φ ∈ S_k⁰ : |π_φ| = q} ≤ k^{4q} / (2q)!`, where
//! `π_φ = c⁻¹ φ⁻¹ α⁻¹ c (ℓ₂ k-1)(1 ℓ₁) φ`.

use std::collections::HashSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgroup::{enumerate_sk0, support_window, Permutation};
use crate::rational::{self, Rational};

/// Largest degree accepted by the enumeration.
pub const MAX_LEMMA_DEGREE: usize = 7;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub count: u64,
    /// `k^{4q} / (2q)!`.
    #[serde(serialize_with = "serialize_rational")]
    pub bound: Rational,
    pub ok: bool,
    /// Whether `φ ↦ φ` restricted to the `2q`-point window around the support
    /// of `π_φ` is one-to-one on the counted set; `None` when `2q > k`.
    pub injective: Option<bool>,
}

fn serialize_rational<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// One line of the exhaustive sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaRow {
    pub alpha: String,
    pub l1: usize,
    pub l2: usize,
    pub q: usize,
    #[serde(flatten)]
    pub check: LemmaCheck,
}

pub fn lemma_bound(k: usize, q: usize) -> Rational {
    Rational::new(
        num_traits::pow(BigInt::from(k), 4 * q),
        rational::factorial(2 * q),
    )
}

fn validate(k: usize, l1: usize, l2: usize, alpha: &Permutation) -> Result<()> {
    if !(2..=MAX_LEMMA_DEGREE).contains(&k) {
        return Err(Error::OutOfRange(format!(
            "k = {k} outside 2..={MAX_LEMMA_DEGREE}"
        )));
    }
    if !(1..k).contains(&l1) || !(1..k).contains(&l2) {
        return Err(Error::OutOfRange(format!(
            "l1 = {l1}, l2 = {l2} must lie in 1..={}",
            k - 1
        )));
    }
    if alpha.degree() != k {
        return Err(Error::DegreeMismatch {
            left: alpha.degree(),
            right: k,
        });
    }
    if !alpha.fixes(1) || !alpha.fixes(k) {
        return Err(Error::OutOfRange(format!(
            "alpha = {alpha} must fix 1 and {k}"
        )));
    }
    Ok(())
}

/// `(φ, π_φ)` for every `φ ∈ S_k⁰`.
fn products(
    k: usize,
    l1: usize,
    l2: usize,
    alpha: &Permutation,
) -> Result<Vec<(Permutation, Permutation)>> {
    let c = Permutation::long_cycle(k);
    let c_inv = c.inverse();
    let alpha_inv = alpha.inverse();
    let swap = &Permutation::transposition(k, l2, k - 1)? * &Permutation::transposition(k, 1, l1)?;
    Ok(enumerate_sk0(k)?
        .map(|phi| {
            let pi = &(&(&(&(&c_inv * &phi.inverse()) * &alpha_inv) * &c) * &swap) * &phi;
            (phi, pi)
        })
        .collect())
}

fn check_from(pairs: &[(Permutation, Permutation)], k: usize, q: usize) -> Result<LemmaCheck> {
    let hits: Vec<&(Permutation, Permutation)> = pairs
        .iter()
        .filter(|(_, pi)| pi.transposition_distance() == q)
        .collect();
    let count = hits.len() as u64;
    let bound = lemma_bound(k, q);
    let ok = Rational::from_integer(BigInt::from(count)) <= bound && (q > 0 || count <= 1);
    let injective = if 2 * q <= k {
        let mut seen = HashSet::with_capacity(hits.len());
        let mut distinct = true;
        for (phi, pi) in hits {
            let window = support_window(pi, q)?;
            let key: Vec<(usize, usize)> = window.iter().map(|&x| (x, phi.apply(x))).collect();
            distinct &= seen.insert(key);
        }
        Some(distinct)
    } else {
        None
    };
    Ok(LemmaCheck {
        count,
        bound,
        ok,
        injective,
    })
}

/// Counts `φ ∈ S_k⁰` with `|π_φ| = q` and compares with `k^{4q}/(2q)!`.
/// For `q = 0` the count must also be at most one.
pub fn verify_counting_lemma(
    k: usize,
    l1: usize,
    l2: usize,
    alpha: &Permutation,
    q: usize,
) -> Result<LemmaCheck> {
    validate(k, l1, l2, alpha)?;
    if q > k - 2 {
        return Err(Error::OutOfRange(format!(
            "q = {q} above k - 2 = {}",
            k - 2
        )));
    }
    check_from(&products(k, l1, l2, alpha)?, k, q)
}

/// Every `(α, ℓ₁, ℓ₂, q)` with `α ∈ S_k⁰`, `ℓ₁, ℓ₂ ∈ 1..k-1`, `q ∈ 0..=k-2`,
/// in lexicographic order of `(α, ℓ₁, ℓ₂, q)`.
pub fn sweep_counting_lemma(k: usize) -> Result<Vec<LemmaRow>> {
    let alphas: Vec<Permutation> = enumerate_sk0(k)?.collect();
    let rows: Vec<Vec<LemmaRow>> = alphas
        .par_iter()
        .map(|alpha| {
            let mut rows = Vec::new();
            for l1 in 1..k {
                for l2 in 1..k {
                    validate(k, l1, l2, alpha)?;
                    let pairs = products(k, l1, l2, alpha)?;
                    for q in 0..=k - 2 {
                        rows.push(LemmaRow {
                            alpha: alpha.to_string(),
                            l1,
                            l2,
                            q,
                            check: check_from(&pairs, k, q)?,
                        });
                    }
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

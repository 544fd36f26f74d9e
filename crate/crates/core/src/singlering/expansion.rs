//! The per-tuple coefficients `F_i` and `G_i` of the trace-moment expansions,
//! each computed two independent ways.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::haar_moment::{entry_moment, MomentSpec};
use crate::permgroup::{
    coset_representatives, stabilizer, ConjugacyClasses, IndexTuple, Permutation, Universe,
};
use crate::rational::Rational;
use crate::weingarten::wg_table;

fn moment_sum(specs: impl Iterator<Item = MomentSpec>) -> Result<Rational> {
    let mut total = Rational::zero();
    for spec in specs {
        total += entry_moment(&spec)?;
    }
    Ok(total)
}

fn weighted_wg(per_class: &[u64], k: usize, n: usize) -> Result<Rational> {
    let table = wg_table(k, n)?;
    let mut total = Rational::zero();
    for (class, &count) in per_class.iter().enumerate() {
        if count > 0 {
            total += Rational::from_integer(BigInt::from(count)) * table.by_class(class);
        }
    }
    Ok(total)
}

fn require_degree(i: &IndexTuple, min: usize) -> Result<usize> {
    let k = i.len();
    if k < min {
        return Err(Error::OutOfRange(format!("tuple length {k} below {min}")));
    }
    Ok(k)
}

/// `F_i` as a sum over `Φ ∈ S_k⁰ / S_k⁰(i)` of the degree-`k-1` moments
/// `E u_{i1 i2} ⋯ u_{i(k-1) ik} · conj(u_{iΦ(1) iΦ(2)}) ⋯ conj(u_{iΦ(k-1) iΦ(k)})`.
pub fn f_i_cosets(i: &IndexTuple) -> Result<Rational> {
    let k = require_degree(i, 2)?;
    let universe = Universe::FixEnds.elements(k)?;
    let reps = coset_representatives(&universe, &stabilizer(i, Universe::FixEnds))?;
    let t = i.as_slice();
    moment_sum(reps.iter().map(|phi| {
        let p = i.permuted(phi);
        let p = p.as_slice();
        MomentSpec {
            n: i.dimension(),
            rows: t[..k - 1].to_vec(),
            cols: t[1..].to_vec(),
            conj_rows: p[..k - 1].to_vec(),
            conj_cols: p[1..].to_vec(),
        }
    }))
}

/// Which `(ℓ₁, ℓ₂)` pairs enter the Weingarten-sum form of `F_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LRange {
    /// Only `ℓ₁` with `i_{ℓ₁} = i_1` and `ℓ₂` with `i_{ℓ₂+1} = i_k`. These are
    /// exactly the pairs for which `σ = (φ⁻¹α⁻¹(1 ℓ₁))` and
    /// `τ = (c⁻¹φ⁻¹α⁻¹c(ℓ₂ k-1))` satisfy the Kronecker constraints, so each
    /// admissible `(σ, τ)` is produced once.
    Matching,
    /// Every `ℓ₁, ℓ₂ ∈ 1..k-1`. Overcounts whenever some `ℓ` violates the
    /// matching condition; kept to quantify that discrepancy.
    All,
}

/// Class histogram (at degree `k - 1`) of
/// `(c⁻¹ φ⁻¹ α⁻¹ c (ℓ₂ k-1)(1 ℓ₁) φ)` restricted to `1..k-1`, over
/// `φ ∈ S_k⁰`, `α ∈ S_k⁰(i)` and the selected `(ℓ₁, ℓ₂)`. Independent of `n`.
pub fn f_i_class_counts(i: &IndexTuple, range: LRange) -> Result<Vec<u64>> {
    let k = require_degree(i, 2)?;
    let classes = ConjugacyClasses::get(k - 1)?;
    let c = Permutation::long_cycle(k);
    let c_inv = c.inverse();
    let keep = |l1: usize, l2: usize| {
        range == LRange::All || (i.get(l1) == i.get(1) && i.get(l2 + 1) == i.get(k))
    };
    let mut swaps = Vec::with_capacity((k - 1) * (k - 1));
    for l2 in 1..k {
        for l1 in (1..k).filter(|&l1| keep(l1, l2)) {
            let t2 = Permutation::transposition(k, l2, k - 1)?;
            let t1 = Permutation::transposition(k, 1, l1)?;
            swaps.push(&t2 * &t1);
        }
    }
    let mut per_class = vec![0u64; classes.len()];
    for phi in Universe::FixEnds.elements(k)? {
        let phi_inv = phi.inverse();
        for alpha in stabilizer(i, Universe::FixEnds) {
            let head = &(&(&c_inv * &phi_inv) * &alpha.inverse()) * &c;
            for swap in &swaps {
                let product = &(&head * swap) * &phi;
                let restricted = product.restrict_drop_last().map_err(|e| {
                    Error::CrossCheck(format!("F expansion term for i = {:?}: {e}", i.as_slice()))
                })?;
                per_class[classes.class_of(&restricted)] += 1;
            }
        }
    }
    Ok(per_class)
}

/// `F_i` as `Σ_{ℓ₁, ℓ₂, φ, α} Wg_{k-1}(…)`; see [`f_i_class_counts`].
pub fn f_i_wg_sum(i: &IndexTuple, range: LRange) -> Result<Rational> {
    let k = require_degree(i, 2)?;
    weighted_wg(&f_i_class_counts(i, range)?, k - 1, i.dimension())
}

/// `F_i`, computed both ways; any disagreement is an error naming `i`.
pub fn f_i(i: &IndexTuple) -> Result<Rational> {
    let direct = f_i_cosets(i)?;
    let via_wg = f_i_wg_sum(i, LRange::Matching)?;
    if direct != via_wg {
        return Err(Error::CrossCheck(format!(
            "F_i mismatch for i = {:?}, n = {}: coset form {direct}, Weingarten form {via_wg}",
            i.as_slice(),
            i.dimension()
        )));
    }
    Ok(direct)
}

/// `G_i` as a sum over `Φ ∈ S_k / S_k(i)` of the degree-`k` moments
/// `E u_{i1 i2} ⋯ u_{ik i1} · conj(u_{iΦ(1) iΦ(2)}) ⋯ conj(u_{iΦ(k) iΦ(1)})`.
pub fn g_i_cosets(i: &IndexTuple) -> Result<Rational> {
    let k = require_degree(i, 1)?;
    let universe = Universe::Full.elements(k)?;
    let reps = coset_representatives(&universe, &stabilizer(i, Universe::Full))?;
    let shift = |t: &[usize]| t[1..].iter().chain(&t[..1]).copied().collect::<Vec<_>>();
    moment_sum(reps.iter().map(|phi| {
        let p = i.permuted(phi);
        MomentSpec {
            n: i.dimension(),
            rows: i.as_slice().to_vec(),
            cols: shift(i.as_slice()),
            conj_rows: p.as_slice().to_vec(),
            conj_cols: shift(p.as_slice()),
        }
    }))
}

/// Class histogram of `c⁻¹ φ⁻¹ α⁻¹ c φ` over `φ ∈ S_k`, `α ∈ S_k(i)`.
pub fn g_i_class_counts(i: &IndexTuple) -> Result<Vec<u64>> {
    let k = require_degree(i, 1)?;
    let classes = ConjugacyClasses::get(k)?;
    let c = Permutation::long_cycle(k);
    let c_inv = c.inverse();
    let stab = stabilizer(i, Universe::Full);
    let mut per_class = vec![0u64; classes.len()];
    for phi in Universe::Full.elements(k)? {
        let phi_inv = phi.inverse();
        for alpha in &stab {
            let product = &(&(&(&c_inv * &phi_inv) * &alpha.inverse()) * &c) * &phi;
            per_class[classes.class_of(&product)] += 1;
        }
    }
    Ok(per_class)
}

pub fn g_i_wg_sum(i: &IndexTuple) -> Result<Rational> {
    weighted_wg(&g_i_class_counts(i)?, i.len(), i.dimension())
}

/// `G_i`, computed both ways; any disagreement is an error naming `i`.
pub fn g_i(i: &IndexTuple) -> Result<Rational> {
    let direct = g_i_cosets(i)?;
    let via_wg = g_i_wg_sum(i)?;
    if direct != via_wg {
        return Err(Error::CrossCheck(format!(
            "G_i mismatch for i = {:?}, n = {}: coset form {direct}, Weingarten form {via_wg}",
            i.as_slice(),
            i.dimension()
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn tuple(v: &[usize], n: usize) -> IndexTuple {
        IndexTuple::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn degree_two_is_one_over_n() {
        for n in 1..5 {
            for v in [[1, 1], [1, 2], [2, 1]] {
                if v.iter().all(|&x| x <= n) {
                    assert_eq!(f_i(&tuple(&v, n)).unwrap(), ratio(1, n as i64));
                }
            }
        }
        assert_eq!(f_i(&tuple(&[1, 1], 1)).unwrap(), int(1));
    }

    #[test]
    fn g_degree_one() {
        for n in 1..5 {
            assert_eq!(g_i(&tuple(&[1], n)).unwrap(), ratio(1, n as i64));
        }
    }

    #[test]
    fn both_forms_agree_on_every_pattern() {
        for k in 2..=5usize {
            for n in (k - 1).max(1)..=k {
                for pattern in crate::permgroup::set_partitions(k) {
                    let blocks = pattern.iter().max().unwrap() + 1;
                    if blocks > n {
                        continue;
                    }
                    let i = tuple(&pattern.iter().map(|b| b + 1).collect::<Vec<_>>(), n);
                    f_i(&i).unwrap();
                    if n >= k {
                        g_i(&i).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn unrestricted_l_range_overcounts() {
        // i = (1, 1, 2): only ℓ₂ = 2 satisfies i_{ℓ₂+1} = i_3, and the direct
        // moment is E[u11 u12 conj(u11 u12)] = 1/(n(n+1)).
        let i = tuple(&[1, 1, 2], 3);
        assert_eq!(f_i_cosets(&i).unwrap(), ratio(1, 12));
        assert_eq!(f_i_wg_sum(&i, LRange::Matching).unwrap(), ratio(1, 12));
        assert_eq!(f_i_wg_sum(&i, LRange::All).unwrap(), ratio(1, 6));
        // A constant tuple satisfies every matching condition.
        let constant = tuple(&[2, 2, 2, 2], 4);
        assert_eq!(
            f_i_wg_sum(&constant, LRange::All).unwrap(),
            f_i_wg_sum(&constant, LRange::Matching).unwrap()
        );
    }

    #[test]
    fn coefficient_depends_only_on_pattern() {
        let a = tuple(&[1, 2, 1, 3], 4);
        let b = tuple(&[4, 1, 4, 2], 4);
        assert_eq!(f_i(&a).unwrap(), f_i(&b).unwrap());
        assert_eq!(g_i(&a).unwrap(), g_i(&b).unwrap());
    }
}

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::permgroup::{symmetric_group, ConjugacyClasses, Permutation, MAX_DEGREE};
use crate::rational::{self, Rational};

/// `counts[λ][ν][c]` = #{τ ∈ S_k : τ has c cycles, τ⁻¹π_λ ∈ class ν} for a
/// fixed representative `π_λ`. Independent of `n`.
fn gram_counts(k: usize) -> Result<&'static Vec<Vec<Vec<u64>>>> {
    static TABLES: [OnceLock<Vec<Vec<Vec<u64>>>>; MAX_DEGREE + 1] =
        [const { OnceLock::new() }; MAX_DEGREE + 1];
    let classes = ConjugacyClasses::get(k)?;
    Ok(TABLES[k].get_or_init(|| {
        let group = symmetric_group(k);
        let inverses: Vec<Permutation> = group.iter().map(Permutation::inverse).collect();
        let cycles: Vec<usize> = group.iter().map(Permutation::cycle_count).collect();
        (0..classes.len())
            .map(|lambda| {
                let pi = classes.representative(lambda);
                let mut row = vec![vec![0u64; k + 1]; classes.len()];
                for (tau_inv, &c) in inverses.iter().zip(&cycles) {
                    row[classes.class_of(&(tau_inv * &pi))][c] += 1;
                }
                row
            })
            .collect()
    }))
}

/// Exact values of `Wg(·; n)` on `S_k`, one rational per conjugacy class.
///
/// Obtained by inverting convolution by `σ ↦ n^{#cycles(σ)}` on class
/// functions: `Σ_τ n^{#(τ)} Wg(τ⁻¹π) = δ_{π,id}`. The system is indexed by
/// partitions of `k`, so it is at most 22 × 22 for `k = 8`.
#[derive(Clone, Debug)]
pub struct WgTable {
    k: usize,
    n: usize,
    values: Vec<Rational>,
}

impl WgTable {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        let classes = ConjugacyClasses::get(k)?;
        if n < k {
            return Err(Error::SingularSystem { k, n });
        }
        let counts = gram_counts(k)?;
        let powers: Vec<BigInt> = (0..=k)
            .map(|c| num_traits::pow(BigInt::from(n), c))
            .collect();
        let gram: Vec<Vec<Rational>> = counts
            .iter()
            .map(|row| {
                row.iter()
                    .map(|by_cycles| {
                        let entry: BigInt = by_cycles
                            .iter()
                            .zip(&powers)
                            .map(|(&cnt, pw)| BigInt::from(cnt) * pw)
                            .sum();
                        Rational::from_integer(entry)
                    })
                    .collect()
            })
            .collect();
        let mut rhs = vec![Rational::zero(); classes.len()];
        rhs[classes.identity_class()] = Rational::one();
        let values = rational::solve(gram, rhs).ok_or(Error::SingularSystem { k, n })?;
        Ok(WgTable { k, n, values })
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn by_class(&self, class: usize) -> &Rational {
        &self.values[class]
    }

    pub fn value(&self, pi: &Permutation) -> Result<&Rational> {
        if pi.degree() != self.k {
            return Err(Error::DegreeMismatch {
                left: pi.degree(),
                right: self.k,
            });
        }
        Ok(&self.values[ConjugacyClasses::get(self.k)?.class_of(pi)])
    }
}

type TableCache = RwLock<HashMap<(usize, usize), Arc<WgTable>>>;

/// Shared memo of [`WgTable`]s keyed by `(k, n)`. Readers never block each
/// other; a missing entry is built outside the lock and inserted once.
pub fn wg_table(k: usize, n: usize) -> Result<Arc<WgTable>> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(table) = cache.read().unwrap().get(&(k, n)) {
        return Ok(Arc::clone(table));
    }
    let table = Arc::new(WgTable::new(k, n)?);
    Ok(Arc::clone(
        cache.write().unwrap().entry((k, n)).or_insert(table),
    ))
}

/// Exact `Wg(π)` at degree `k` and dimension `n ≥ k`.
pub fn wg_exact(k: usize, n: usize, pi: &Permutation) -> Result<Rational> {
    if pi.degree() != k {
        return Err(Error::DegreeMismatch {
            left: pi.degree(),
            right: k,
        });
    }
    Ok(wg_table(k, n)?.value(pi)?.clone())
}

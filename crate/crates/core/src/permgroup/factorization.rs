use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::group::{symmetric_group, ConjugacyClasses};
use super::perm::Permutation;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    /// `t_1 ≤ ⋯ ≤ t_r`
    Weak,
    /// `t_1 < ⋯ < t_r`
    Strict,
}

/// A product of transpositions `(s_1 t_1) ∘ ⋯ ∘ (s_r t_r)` with `s_i < t_i`
/// and monotone `t`'s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneFactorization {
    k: usize,
    factors: Vec<(usize, usize)>,
    monotonicity: Monotonicity,
}

impl MonotoneFactorization {
    pub fn new(k: usize, factors: Vec<(usize, usize)>, monotonicity: Monotonicity) -> Result<Self> {
        for &(s, t) in &factors {
            if s == 0 || s >= t || t > k {
                return Err(Error::InvalidPermutation(format!(
                    "factor ({s} {t}) needs 1 <= s < t <= {k}"
                )));
            }
        }
        let ordered = factors.windows(2).all(|w| match monotonicity {
            Monotonicity::Weak => w[0].1 <= w[1].1,
            Monotonicity::Strict => w[0].1 < w[1].1,
        });
        if !ordered {
            return Err(Error::InvalidPermutation(format!(
                "t-sequence of {factors:?} is not {monotonicity:?}ly increasing"
            )));
        }
        Ok(MonotoneFactorization {
            k,
            factors,
            monotonicity,
        })
    }

    pub fn factors(&self) -> &[(usize, usize)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    /// The composed permutation.
    pub fn product(&self) -> Permutation {
        let mut acc = Permutation::identity(self.k);
        for &(s, t) in &self.factors {
            let tr = Permutation::transposition(self.k, s, t).expect("validated factor");
            acc = &acc * &tr;
        }
        acc
    }
}

/// The unique factorization of `p` into `|p|` transpositions with strictly
/// increasing `t`'s.
///
/// Peels off the largest moved point `t` with `s = p⁻¹(t)`: then
/// `p ∘ (s t)` fixes `t` and everything above it and has one more cycle.
pub fn canonical_minimal_factorization(p: &Permutation) -> MonotoneFactorization {
    let k = p.degree();
    let mut rest = p.clone();
    let mut factors = Vec::with_capacity(p.transposition_distance());
    while let Some(&t) = rest.support().last() {
        let s = rest.inverse().apply(t);
        rest = &rest * &Permutation::transposition(k, s, t).expect("points in range");
        factors.push((s, t));
    }
    factors.reverse();
    MonotoneFactorization::new(k, factors, Monotonicity::Strict)
        .expect("peeling yields strictly increasing t")
}

/// A set of exactly `2q` points containing the points used by the canonical
/// minimal factorization of `p`, completed with the smallest unused integers.
pub fn support_window(p: &Permutation, q: usize) -> Result<BTreeSet<usize>> {
    let k = p.degree();
    if 2 * q > k {
        return Err(Error::OutOfRange(format!(
            "window size 2q = {} exceeds k = {k}",
            2 * q
        )));
    }
    if q < p.transposition_distance() {
        return Err(Error::OutOfRange(format!(
            "q = {q} is below |p| = {}",
            p.transposition_distance()
        )));
    }
    let mut window: BTreeSet<usize> = canonical_minimal_factorization(p)
        .factors()
        .iter()
        .flat_map(|&(s, t)| [s, t])
        .collect();
    let mut candidate = 1;
    while window.len() < 2 * q {
        window.insert(candidate);
        candidate += 1;
    }
    Ok(window)
}

/// Table of `c_r(π)` for every conjugacy class of `S_k` and `0 ≤ r ≤ r_max`.
///
/// Computed by dynamic programming over states (partial product, last `t`);
/// each step right-multiplies by every transposition `(s t)` whose `t` is at
/// least the previous one. Counts are exact `u128`; overflow is an error.
#[derive(Debug)]
pub struct MonotoneCounts {
    k: usize,
    by_class: Vec<Vec<u128>>,
}

impl MonotoneCounts {
    pub fn compute(k: usize, r_max: usize) -> Result<Self> {
        let classes = ConjugacyClasses::get(k)?;
        let perms = symmetric_group(k);
        let size = perms.len();
        let reps: Vec<usize> = (0..classes.len())
            .map(|c| classes.representative(c).rank())
            .collect();

        // right_mul[t][s][rank] = rank of P ∘ (s t), 0-based s < t.
        let mut right_mul = vec![Vec::new(); k];
        for (t, slot) in right_mul.iter_mut().enumerate().skip(1) {
            *slot = (0..t)
                .map(|s| {
                    perms
                        .iter()
                        .map(|p| {
                            let mut img = p.as_slice().to_vec();
                            img.swap(s, t);
                            Permutation::from_zero_based(img).rank()
                        })
                        .collect::<Vec<usize>>()
                })
                .collect::<Vec<_>>();
        }

        // cur[t][rank]: sequences ending with last index t (slot 0 = empty word).
        let mut cur = vec![vec![0u128; size]; k];
        cur[0][0] = 1;
        let mut by_class = Vec::with_capacity(r_max + 1);
        for r in 0..=r_max {
            let row = reps
                .iter()
                .map(|&rank| {
                    cur.iter()
                        .try_fold(0u128, |acc, layer| acc.checked_add(layer[rank]))
                })
                .collect::<Option<Vec<u128>>>()
                .ok_or(Error::Overflow { k, r })?;
            by_class.push(row);
            if r == r_max {
                break;
            }
            let mut prefix = vec![0u128; size];
            let mut next = vec![vec![0u128; size]; k];
            for t in 0..k {
                for (acc, &v) in prefix.iter_mut().zip(&cur[t]) {
                    *acc = acc.checked_add(v).ok_or(Error::Overflow { k, r: r + 1 })?;
                }
                if t == 0 {
                    continue;
                }
                for mul in &right_mul[t] {
                    for (rank, &count) in prefix.iter().enumerate() {
                        if count != 0 {
                            let slot = &mut next[t][mul[rank]];
                            *slot = slot
                                .checked_add(count)
                                .ok_or(Error::Overflow { k, r: r + 1 })?;
                        }
                    }
                }
            }
            cur = next;
        }
        Ok(MonotoneCounts { k, by_class })
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn r_max(&self) -> usize {
        self.by_class.len() - 1
    }

    pub fn by_class(&self, class: usize, r: usize) -> u128 {
        self.by_class[r][class]
    }

    pub fn count(&self, p: &Permutation, r: usize) -> Result<u128> {
        if p.degree() != self.k {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: self.k,
            });
        }
        if r > self.r_max() {
            return Err(Error::OutOfRange(format!(
                "r = {r} beyond table limit {}",
                self.r_max()
            )));
        }
        Ok(self.by_class[r][ConjugacyClasses::get(self.k)?.class_of(p)])
    }
}

/// Shared, lazily extended tables of monotone factorization counts.
pub fn monotone_counts(k: usize, r_max: usize) -> Result<Arc<MonotoneCounts>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<MonotoneCounts>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(table) = cache.lock().unwrap().get(&k) {
        if table.r_max() >= r_max {
            return Ok(Arc::clone(table));
        }
    }
    let table = Arc::new(MonotoneCounts::compute(k, r_max)?);
    let mut guard = cache.lock().unwrap();
    let entry = guard.entry(k).or_insert_with(|| Arc::clone(&table));
    if entry.r_max() < table.r_max() {
        *entry = Arc::clone(&table);
    }
    Ok(table)
}

/// `c_r(p)`: the number of weakly monotone factorizations of `p` into `r`
/// transpositions.
pub fn count_monotone_factorizations(p: &Permutation, r: usize) -> Result<u128> {
    let dist = p.transposition_distance();
    if r < dist || (r - dist) % 2 == 1 {
        return Ok(0);
    }
    monotone_counts(p.degree(), r)?.count(p, r)
}

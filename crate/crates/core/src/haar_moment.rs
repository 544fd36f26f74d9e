//! Mixed moments `E[u_{i1 j1} ⋯ u_{ik jk} conj(u_{i'1 j'1}) ⋯ conj(u_{i'k j'k})]`
//! of a Haar unitary, exactly through the Weingarten function and by sampling.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::montecarlo::{self, MomentEstimate, Statistic};
use crate::permgroup::{stabilizer, ConjugacyClasses, IndexTuple, Permutation, Universe};
use crate::rational::Rational;
use crate::weingarten::wg_table;

/// Index data of one mixed moment: `u` factors at `(rows[l], cols[l])` and
/// conjugated factors at `(conj_rows[l], conj_cols[l])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentSpec {
    pub n: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub conj_rows: Vec<usize>,
    pub conj_cols: Vec<usize>,
}

impl MomentSpec {
    pub fn new(
        n: usize,
        rows: Vec<usize>,
        cols: Vec<usize>,
        conj_rows: Vec<usize>,
        conj_cols: Vec<usize>,
    ) -> Result<Self> {
        let spec = MomentSpec {
            n,
            rows,
            cols,
            conj_rows,
            conj_cols,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Builds a spec from `(row, col)` pairs for the plain and conjugated factors.
    pub fn from_pairs(n: usize, plain: &[(usize, usize)], conj: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            n,
            plain.iter().map(|p| p.0).collect(),
            plain.iter().map(|p| p.1).collect(),
            conj.iter().map(|p| p.0).collect(),
            conj.iter().map(|p| p.1).collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.rows.len()
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.rows.len();
        if [&self.cols, &self.conj_rows, &self.conj_cols]
            .iter()
            .any(|t| t.len() != k)
        {
            return Err(Error::InvalidIndex(
                "all four index tuples must have the same length".into(),
            ));
        }
        for t in [&self.rows, &self.cols, &self.conj_rows, &self.conj_cols] {
            IndexTuple::new(t.clone(), self.n)?;
        }
        Ok(())
    }

    /// Reorders the plain factors by `p` and the conjugated factors by `q`;
    /// the moment is unchanged.
    pub fn reindexed(&self, p: &Permutation, q: &Permutation) -> MomentSpec {
        let by = |t: &[usize], g: &Permutation| (1..=t.len()).map(|l| t[g.apply(l) - 1]).collect();
        MomentSpec {
            n: self.n,
            rows: by(&self.rows, p),
            cols: by(&self.cols, p),
            conj_rows: by(&self.conj_rows, q),
            conj_cols: by(&self.conj_cols, q),
        }
    }
}

/// Some `g` with `target[g(l)] = source[l]` for all `l`, or `None` when the
/// multisets differ.
fn matching(source: &[usize], target: &[usize]) -> Option<Permutation> {
    let mut used = vec![false; target.len()];
    let mut images = Vec::with_capacity(source.len());
    for &v in source {
        let pos = (0..target.len()).find(|&p| !used[p] && target[p] == v)?;
        used[pos] = true;
        images.push(pos + 1);
    }
    Some(Permutation::from_images(&images).expect("matching is a bijection"))
}

/// Adjacent transpositions inside each block of equal values; they generate
/// the stabilizer of the tuple.
fn block_generators(t: &[usize]) -> Vec<Permutation> {
    let k = t.len();
    let mut gens = Vec::new();
    for a in 0..k {
        if let Some(b) = (a + 1..k).find(|&b| t[b] == t[a]) {
            gens.push(Permutation::transposition(k, a + 1, b + 1).expect("valid positions"));
        }
    }
    gens
}

/// Exact moment via the Weingarten formula.
///
/// The admissible `σ` form the coset `σ₀ H_i` and the admissible `τ` form
/// `τ₀ H_j`, where `H_i`, `H_j` stabilize the plain rows and columns. Hence
/// `σ⁻¹τ` runs over the double coset `H_i g H_j` with `g = σ₀⁻¹τ₀`, each element
/// hit `|H_i||H_j| / |H_i g H_j|` times. The double coset is enumerated by a
/// closure search, so the cost is its size rather than `(k!)²`.
pub fn entry_moment(spec: &MomentSpec) -> Result<Rational> {
    spec.validate()?;
    let k = spec.degree();
    if k == 0 {
        return Ok(Rational::from_integer(1.into()));
    }
    let classes = ConjugacyClasses::get(k)?;
    let (Some(sigma0), Some(tau0)) = (
        matching(&spec.rows, &spec.conj_rows),
        matching(&spec.cols, &spec.conj_cols),
    ) else {
        return Ok(Rational::zero());
    };
    let table = wg_table(k, spec.n)?;
    let g = &sigma0.inverse() * &tau0;
    let left = block_generators(&spec.rows);
    let right = block_generators(&spec.cols);

    let mut seen: HashSet<usize> = HashSet::from([g.rank()]);
    let mut frontier = vec![g];
    let mut per_class = vec![0u64; classes.len()];
    while let Some(x) = frontier.pop() {
        per_class[classes.class_of(&x)] += 1;
        let moves = left
            .iter()
            .map(|h| h * &x)
            .chain(right.iter().map(|h| &x * h));
        for y in moves {
            if seen.insert(y.rank()) {
                frontier.push(y);
            }
        }
    }
    let orbit = seen.len() as u64;
    let stab = |t: &[usize]| {
        stabilizer(
            &IndexTuple::new(t.to_vec(), spec.n).expect("validated"),
            Universe::Full,
        )
        .len() as u64
    };
    let weight = stab(&spec.rows) * stab(&spec.cols);
    let mut total = Rational::zero();
    for (class, &count) in per_class.iter().enumerate() {
        if count > 0 {
            total += Rational::from_integer(BigInt::from(count)) * table.by_class(class);
        }
    }
    Ok(total * Rational::new(BigInt::from(weight), BigInt::from(orbit)))
}

/// Monte-Carlo estimate of the real part of the moment over `samples` Haar
/// unitaries. Batches draw from independent ChaCha streams of `seed`, so the
/// result does not depend on the thread count.
pub fn mc_entry_moment(spec: &MomentSpec, samples: usize, seed: u64) -> Result<MomentEstimate> {
    spec.validate()?;
    if samples == 0 {
        return Err(Error::OutOfRange("samples must be at least 1".into()));
    }
    let k = spec.degree();
    let idx = |t: &[usize]| t.iter().map(|&v| v - 1).collect::<Vec<_>>();
    let (r, c, rc, cc) = (
        idx(&spec.rows),
        idx(&spec.cols),
        idx(&spec.conj_rows),
        idx(&spec.conj_cols),
    );
    let [acc] = montecarlo::run_batches(samples, seed, |rng| {
        let u = montecarlo::sample_haar_unitary(spec.n, rng);
        let mut z = faer::c64::new(1.0, 0.0);
        for l in 0..k {
            z *= u[(r[l], c[l])] * u[(rc[l], cc[l])].conj();
        }
        [z.re]
    });
    Ok(acc.into_estimate(Statistic::EntryMoment, k, spec.n))
}

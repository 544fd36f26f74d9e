use num_traits::One;

use crate::error::{Error, Result};
use crate::permgroup::Permutation;
use crate::rational::{self, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundCase {
    Identity,
    NonIdentity,
}

/// Upper bound on `|Wg(π)|` valid when `k² < 2n`.
#[derive(Clone, Debug, PartialEq)]
pub struct WgBound {
    pub value: Rational,
    pub case: BoundCase,
    pub k: usize,
    pub n: usize,
    pub distance: usize,
}

/// For `π ≠ id`: `(2 / (n^k k²)) (k²/2n)^{|π|} / (1 - k²/2n)`.
/// For `π = id`: `1/n^k + (k² / 2n^{k+2}) / (1 - k⁴/4n²)`.
pub fn wg_bound(k: usize, n: usize, pi: &Permutation) -> Result<WgBound> {
    if pi.degree() != k {
        return Err(Error::DegreeMismatch {
            left: pi.degree(),
            right: k,
        });
    }
    if k * k >= 2 * n {
        return Err(Error::OutOfRange(format!(
            "bound needs k^2 < 2n, got k = {k}, n = {n}"
        )));
    }
    let (k_r, n_r) = (int(k as i64), int(n as i64));
    let k2 = &k_r * &k_r;
    let x = &k2 / (int(2) * &n_r);
    let n_k = rational::pow(&n_r, k);
    let distance = pi.transposition_distance();
    let (value, case) = if distance == 0 {
        let lead = n_k.recip();
        let num = &k2 / (int(2) * &n_k * &n_r * &n_r);
        let den = Rational::one() - &x * &x;
        (lead + num / den, BoundCase::Identity)
    } else {
        let pre = int(2) / (&n_k * &k2);
        (
            pre * rational::pow(&x, distance) / (Rational::one() - &x),
            BoundCase::NonIdentity,
        )
    };
    Ok(WgBound {
        value,
        case,
        k,
        n,
        distance,
    })
}

/// Alternative bounds for side-by-side comparison; `None` marks a bound
/// whose hypotheses fail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AltBounds {
    /// `K_j n^{-k-|π|(1-2/j)}`, requires `k, j ≥ 2` and `k^j ≤ n`.
    pub power_bound: Option<f64>,
    /// `(3 C_{k-1} / 2) n^{-k-|π|}` with a Catalan number, requires `k^{3/2} ≤ n`.
    pub catalan_bound: Option<f64>,
}

/// Default for the unspecified constant `K_j` of the power bound.
pub const DEFAULT_KJ: f64 = 1.0;

pub fn catalan(m: usize) -> f64 {
    rational::to_f64(&Rational::new(
        rational::binomial(2 * m, m),
        (m as i64 + 1).into(),
    ))
}

pub fn wg_alt_bounds(k: usize, n: usize, pi: &Permutation, j: u32, kj: f64) -> AltBounds {
    let distance = pi.transposition_distance() as f64;
    let (kf, nf) = (k as f64, n as f64);
    let power_ok = k >= 2 && j >= 2 && (k as u128).checked_pow(j).is_some_and(|kp| kp <= n as u128);
    let power_bound = power_ok.then(|| kj * nf.powf(-kf - distance * (1.0 - 2.0 / j as f64)));
    // k^{3/2} ≤ n  ⇔  k³ ≤ n².
    let catalan_ok = k >= 1 && (k as u128).pow(3) <= (n as u128).pow(2);
    let catalan_bound = catalan_ok.then(|| 1.5 * catalan(k - 1) * nf.powf(-kf - distance));
    AltBounds {
        power_bound,
        catalan_bound,
    }
}

use serde::{Deserialize, Serialize};

use super::profile::SingularProfile;
use super::trace::{exactly_computable, trace_moment_sq, trace_moment_uu};
use crate::error::Result;
use crate::rational::{self, int, Rational};

/// Which trace moment a bound refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    /// `E Tr(Aᵏ (Aᵏ)*)`, bounded by `C n k² (b² + kM²/n)ᵏ`.
    Uu,
    /// `E |Tr Aᵏ|²`, bounded by `C (b² + kM²/n)ᵏ`.
    Sq,
}

/// Exact moment against the constant-free part of its upper bound. The
/// constant `C` is only ever observed here, as `ratio`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub mode: BoundMode,
    pub k: usize,
    pub n: usize,
    pub epsilon: f64,
    pub exact_moment: Option<Rational>,
    pub bound_core: Rational,
    pub ratio: Option<Rational>,
    /// Whether `k⁶ < (2 - ε) n`.
    pub applicable: bool,
}

impl BoundReport {
    pub fn ratio_f64(&self) -> Option<f64> {
        self.ratio.as_ref().map(rational::to_f64)
    }
}

/// `(b² + kM²/n)ᵏ`, times `n k²` in [`BoundMode::Uu`].
pub fn bound_core(k: usize, profile: &SingularProfile, mode: BoundMode) -> Rational {
    let n = int(profile.len() as i64);
    let m = profile.max();
    let base = profile.b_squared() + int(k as i64) * &m * &m / &n;
    let core = rational::pow(&base, k);
    match mode {
        BoundMode::Uu => core * n * int((k * k) as i64),
        BoundMode::Sq => core,
    }
}

/// Evaluates the bound core and, when feasible, the exact moment and ratio.
pub fn theorem_bound(
    k: usize,
    profile: &SingularProfile,
    mode: BoundMode,
    epsilon: f64,
) -> Result<BoundReport> {
    let n = profile.len();
    let core = bound_core(k, profile, mode);
    let exact = if exactly_computable(k, n, mode == BoundMode::Sq) {
        Some(match mode {
            BoundMode::Uu => trace_moment_uu(k, profile)?,
            BoundMode::Sq => trace_moment_sq(k, profile)?,
        })
    } else {
        None
    };
    let ratio = match (&exact, num_traits::Zero::is_zero(&core)) {
        (Some(e), false) => Some(e / &core),
        _ => None,
    };
    let applicable = ((k as f64).powi(6)) < (2.0 - epsilon) * n as f64;
    Ok(BoundReport {
        mode,
        k,
        n,
        epsilon,
        exact_moment: exact,
        bound_core: core,
        ratio,
        applicable,
    })
}

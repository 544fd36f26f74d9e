use faer::{c64, Mat};
use serde::{Deserialize, Serialize};

use super::batch::run_batches;
use super::sampling::sample_a;
use super::spectrum::extreme_eigenvalues;
use crate::error::{Error, Result};
use crate::singlering::{BoundMode, SingularProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    /// `Tr(Aᵏ (Aᵏ)*)`.
    TraceUu,
    /// `|Tr Aᵏ|²`.
    TraceSq,
    SpectralRadius,
    MinModulus,
    /// Real part of a product of Haar-unitary entries.
    EntryMoment,
}

impl Statistic {
    pub fn as_str(self) -> &'static str {
        match self {
            Statistic::TraceUu => "trace_uu",
            Statistic::TraceSq => "trace_sq",
            Statistic::SpectralRadius => "spectral_radius",
            Statistic::MinModulus => "min_modulus",
            Statistic::EntryMoment => "entry_moment",
        }
    }
}

impl From<BoundMode> for Statistic {
    fn from(mode: BoundMode) -> Self {
        match mode {
            BoundMode::Uu => Statistic::TraceUu,
            BoundMode::Sq => Statistic::TraceSq,
        }
    }
}

/// Sample mean of a statistic with its standard error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub statistic: Statistic,
    pub k: usize,
    pub n: usize,
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

impl MomentEstimate {
    /// `|mean - target|` in standard errors. Differences at rounding level
    /// (relative `1e-9`) count as zero, since deterministic statistics have
    /// a standard error that is itself pure rounding noise.
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = (self.mean - target).abs();
        if diff <= 1e-9 * target.abs().max(1.0) {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

/// `(Tr(Aᵏ (Aᵏ)*), |Tr Aᵏ|²)` with `Aᵏ` formed by repeated multiplication.
/// Non-finite entries surface as NaN rather than a silent overflow.
pub fn trace_statistics(a: &Mat<c64>, k: usize) -> (f64, f64) {
    let n = a.nrows();
    let mut power = Mat::<c64>::identity(n, n);
    for _ in 0..k {
        power = &power * a;
    }
    let frob = power.squared_norm_l2();
    let trace = (0..n).fold(c64::new(0.0, 0.0), |acc, i| acc + power[(i, i)]);
    if !frob.is_finite() || !trace.re.is_finite() || !trace.im.is_finite() {
        return (f64::NAN, f64::NAN);
    }
    (frob, trace.norm_sqr())
}

fn finite(estimates: [MomentEstimate; 2]) -> Result<[MomentEstimate; 2]> {
    if estimates.iter().any(|e| !e.mean.is_finite()) {
        return Err(Error::OutOfRange("non-finite Monte-Carlo statistic".into()));
    }
    Ok(estimates)
}

/// Both trace statistics from the same `samples` draws of `A`.
pub fn estimate_trace_moments(
    k: usize,
    profile: &SingularProfile,
    samples: usize,
    seed: u64,
) -> Result<[MomentEstimate; 2]> {
    if samples < 2 {
        return Err(Error::OutOfRange(
            "trace moment estimates need at least 2 samples".into(),
        ));
    }
    let s = profile.values_f64();
    let [uu, sq] = run_batches(samples, seed, |rng| {
        let (uu, sq) = trace_statistics(&sample_a(&s, rng), k);
        [uu, sq]
    });
    finite([
        uu.into_estimate(Statistic::TraceUu, k, s.len()),
        sq.into_estimate(Statistic::TraceSq, k, s.len()),
    ])
}

pub fn estimate_trace_moment(
    k: usize,
    profile: &SingularProfile,
    samples: usize,
    seed: u64,
    mode: BoundMode,
) -> Result<MomentEstimate> {
    let [uu, sq] = estimate_trace_moments(k, profile, samples, seed)?;
    Ok(match mode {
        BoundMode::Uu => uu,
        BoundMode::Sq => sq,
    })
}

/// Means of `|λ_max(A)|` and `|λ_min(A)|`.
pub fn estimate_extreme_moduli(
    profile: &SingularProfile,
    samples: usize,
    seed: u64,
) -> Result<[MomentEstimate; 2]> {
    if samples < 2 {
        return Err(Error::OutOfRange(
            "spectral estimates need at least 2 samples".into(),
        ));
    }
    let s = profile.values_f64();
    let [hi, lo] = run_batches(samples, seed, |rng| {
        match extreme_eigenvalues(&sample_a(&s, rng)) {
            Ok((hi, lo)) => [hi, lo],
            Err(_) => [f64::NAN, f64::NAN],
        }
    });
    let out = [
        hi.into_estimate(Statistic::SpectralRadius, 0, s.len()),
        lo.into_estimate(Statistic::MinModulus, 0, s.len()),
    ];
    if out.iter().any(|e| !e.mean.is_finite()) {
        return Err(Error::EigenNoConvergence { seed: Some(seed) });
    }
    Ok(out)
}

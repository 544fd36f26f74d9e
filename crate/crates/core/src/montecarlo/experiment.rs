//! Extreme-eigenvalue experiments on `A = U T V`: deviation of `|λ_max|`
//! from `b` across dimensions, and empirical tail frequencies.

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};
use statrs::statistics::{Data, OrderStatistics};

use super::batch::stream_rng;
use super::sampling::sample_a;
use super::spectrum::extreme_eigenvalues;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::singlering::SingularProfile;

/// One output row; the column set is fixed as `n,k,seed,stat,value,b,a,M,m`.
/// Spectral statistics carry `k = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub stat: String,
    pub value: f64,
    pub b: f64,
    pub a: f64,
    #[serde(rename = "M")]
    pub max_s: f64,
    #[serde(rename = "m")]
    pub min_s: f64,
}

impl ExperimentRecord {
    pub fn new(
        n: usize,
        k: usize,
        seed: u64,
        stat: &str,
        value: f64,
        profile: &SingularProfile,
    ) -> Self {
        ExperimentRecord {
            n,
            k,
            seed,
            stat: stat.to_string(),
            value,
            b: profile.b(),
            a: profile.a(),
            max_s: rational::to_f64(&profile.max()),
            min_s: rational::to_f64(&profile.min()),
        }
    }
}

/// A profile recipe that can be instantiated at any dimension.
#[derive(Clone, Debug, PartialEq)]
pub enum ProfileFamily {
    /// `const:v`, every `s_i = v`.
    Constant(Rational),
    /// `uniform:lo:hi`, the evenly spaced grid on `[lo, hi]`.
    Grid { lo: Rational, hi: Rational },
    /// `random:lo:hi`, independent uniform draws per replication.
    Random { lo: f64, hi: f64 },
}

impl ProfileFamily {
    pub fn instantiate(&self, n: usize, rng: &mut ChaCha8Rng) -> Result<SingularProfile> {
        match self {
            ProfileFamily::Constant(v) => SingularProfile::constant(v.clone(), n),
            ProfileFamily::Grid { lo, hi } => SingularProfile::uniform_grid(lo, hi, n),
            ProfileFamily::Random { lo, hi } => SingularProfile::uniform_random(*lo, *hi, n, rng),
        }
    }
}

impl FromStr for ProfileFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.trim().split(':').collect();
        let float = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number '{t}' in '{s}'")))
        };
        match fields.as_slice() {
            ["const", v] => Ok(ProfileFamily::Constant(rational::parse(v)?)),
            ["uniform", lo, hi] => Ok(ProfileFamily::Grid {
                lo: rational::parse(lo)?,
                hi: rational::parse(hi)?,
            }),
            ["random", lo, hi] => Ok(ProfileFamily::Random {
                lo: float(lo)?,
                hi: float(hi)?,
            }),
            _ => Err(Error::Config(format!(
                "unknown profile family '{s}' (expected const:v, uniform:lo:hi or random:lo:hi)"
            ))),
        }
    }
}

impl fmt::Display for ProfileFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileFamily::Constant(v) => write!(f, "const:{v}"),
            ProfileFamily::Grid { lo, hi } => write!(f, "uniform:{lo}:{hi}"),
            ProfileFamily::Random { lo, hi } => write!(f, "random:{lo}:{hi}"),
        }
    }
}

impl Serialize for ProfileFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProfileFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Extreme moduli of one sampled `A` with its profile.
#[derive(Clone, Debug)]
pub struct Replication {
    pub seed: u64,
    pub profile: SingularProfile,
    pub lambda_max: f64,
    pub lambda_min: f64,
}

impl Replication {
    pub fn delta_max(&self) -> f64 {
        self.lambda_max - self.profile.b()
    }

    pub fn delta_min(&self) -> f64 {
        self.profile.a() - self.lambda_min
    }

    pub fn records(&self) -> Vec<ExperimentRecord> {
        let n = self.profile.len();
        [
            ("lambda_max", self.lambda_max),
            ("lambda_min", self.lambda_min),
            ("delta_max", self.delta_max()),
            ("delta_min", self.delta_min()),
        ]
        .into_iter()
        .map(|(stat, v)| ExperimentRecord::new(n, 0, self.seed, stat, v, &self.profile))
        .collect()
    }
}

/// Seed of replication `rep`; its generator is stream `n` of that seed, so
/// different dimensions never share draws.
pub fn replication_seed(base: u64, rep: usize) -> u64 {
    base.wrapping_add(rep as u64)
}

pub fn run_replication(family: &ProfileFamily, n: usize, seed: u64) -> Result<Replication> {
    let mut rng = stream_rng(seed, n as u64);
    let profile = family.instantiate(n, &mut rng)?;
    let a = sample_a(&profile.values_f64(), &mut rng);
    let (lambda_max, lambda_min) =
        extreme_eigenvalues(&a).map_err(|_| Error::EigenNoConvergence { seed: Some(seed) })?;
    Ok(Replication {
        seed,
        profile,
        lambda_max,
        lambda_min,
    })
}

/// Replications `0..count` at dimension `n`, in index order.
pub fn run_replications(
    family: &ProfileFamily,
    n: usize,
    count: usize,
    base_seed: u64,
) -> Result<Vec<Replication>> {
    (0..count)
        .into_par_iter()
        .map(|rep| run_replication(family, n, replication_seed(base_seed, rep)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateConfig {
    pub family: ProfileFamily,
    pub n_grid: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
}

/// Quantiles of `max(|λ_max| - b, 0)` at one dimension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateSummary {
    pub n: usize,
    pub median_positive_deviation: f64,
    pub lower_quartile: f64,
    pub upper_quartile: f64,
    pub median_lambda_max: f64,
    pub median_lambda_min: f64,
}

/// Least-squares slope of `ln(median positive deviation)` on `ln n`, with a
/// 95% Student-t interval (absent below three points).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub ci: Option<(f64, f64)>,
}

#[derive(Clone, Debug)]
pub struct RateResult {
    pub records: Vec<ExperimentRecord>,
    pub summaries: Vec<RateSummary>,
    /// `None` when some median is zero and the logarithm is undefined.
    pub fit: Option<RateFit>,
}

pub fn median(values: &[f64]) -> f64 {
    Data::new(values.to_vec()).median()
}

pub fn fit_log_log(points: &[(f64, f64)]) -> Option<RateFit> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ci = (xs.len() > 2).then(|| {
        let dof = m - 2.0;
        let ssr: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (y - intercept - slope * x).powi(2))
            .sum();
        let se = (ssr / dof / sxx).sqrt();
        let t = StudentsT::new(0.0, 1.0, dof)
            .expect("positive dof")
            .inverse_cdf(0.975);
        (slope - t * se, slope + t * se)
    });
    Some(RateFit {
        slope,
        intercept,
        ci,
    })
}

pub fn radius_rate_experiment(config: &RateConfig) -> Result<RateResult> {
    if config.replications < 10 {
        return Err(Error::Config(
            "rate experiment needs at least 10 replications".into(),
        ));
    }
    if config.n_grid.is_empty() || config.n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config(
            "n grid must be non-empty and strictly increasing".into(),
        ));
    }
    let mut records = Vec::new();
    let mut summaries = Vec::new();
    for &n in &config.n_grid {
        let reps = run_replications(&config.family, n, config.replications, config.seed)?;
        records.extend(reps.iter().flat_map(Replication::records));
        let positive: Vec<f64> = reps.iter().map(|r| r.delta_max().max(0.0)).collect();
        let mut data = Data::new(positive);
        summaries.push(RateSummary {
            n,
            median_positive_deviation: data.median(),
            lower_quartile: data.lower_quartile(),
            upper_quartile: data.upper_quartile(),
            median_lambda_max: median(&reps.iter().map(|r| r.lambda_max).collect::<Vec<_>>()),
            median_lambda_min: median(&reps.iter().map(|r| r.lambda_min).collect::<Vec<_>>()),
        });
    }
    let points: Vec<(f64, f64)> = summaries
        .iter()
        .map(|s| (s.n as f64, s.median_positive_deviation))
        .collect();
    Ok(RateResult {
        records,
        summaries,
        fit: fit_log_log(&points),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailConfig {
    pub family: ProfileFamily,
    pub n: usize,
    pub deltas: Vec<f64>,
    pub replications: usize,
    pub seed: u64,
}

/// Empirical `P(|λ_max| > b + δ)` and `P(|λ_min| < a - δ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailPoint {
    pub delta: f64,
    pub p_max: f64,
    pub p_min: f64,
    pub replications: usize,
}

pub struct TailResult {
    pub records: Vec<ExperimentRecord>,
    pub curve: Vec<TailPoint>,
}

pub fn tail_experiment(config: &TailConfig) -> Result<TailResult> {
    if config.replications < 100 {
        return Err(Error::Config(
            "tail experiment needs at least 100 replications".into(),
        ));
    }
    let reps = run_replications(&config.family, config.n, config.replications, config.seed)?;
    let total = reps.len() as f64;
    let curve = config
        .deltas
        .iter()
        .map(|&delta| {
            let above = reps
                .iter()
                .filter(|r| r.lambda_max > r.profile.b() + delta)
                .count();
            let below = reps
                .iter()
                .filter(|r| r.lambda_min < r.profile.a() - delta)
                .count();
            TailPoint {
                delta,
                p_max: above as f64 / total,
                p_min: below as f64 / total,
                replications: reps.len(),
            }
        })
        .collect();
    Ok(TailResult {
        records: reps.iter().flat_map(Replication::records).collect(),
        curve,
    })
}

/// Either experiment, as read from a JSON document with a `kind` tag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExperimentConfig {
    Rate(RateConfig),
    Tail(TailConfig),
}

use std::fmt;
use std::path::PathBuf;

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Uniform};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Prescribed singular values `s_1, …, s_n` of `A = U T V`, stored exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularProfile {
    s: Vec<Rational>,
}

impl SingularProfile {
    pub fn new(s: Vec<Rational>) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidProfile(
                "profile must have at least one entry".into(),
            ));
        }
        if let Some(v) = s.iter().find(|v| v.is_negative()) {
            return Err(Error::InvalidProfile(format!(
                "negative singular value {v}"
            )));
        }
        Ok(SingularProfile { s })
    }

    /// Exact conversion: each float becomes the dyadic rational it denotes.
    pub fn from_f64(values: &[f64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| rational::from_f64(v))
                .collect::<Result<_>>()?,
        )
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn constant(value: Rational, n: usize) -> Result<Self> {
        Self::new(vec![value; n])
    }

    /// `s_i = lo + (i - 1)(hi - lo)/(n - 1)`; a single point sits at `lo`.
    pub fn uniform_grid(lo: &Rational, hi: &Rational, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidProfile("grid needs n >= 1".into()));
        }
        let step = if n == 1 {
            Rational::zero()
        } else {
            (hi - lo) / rational::int(n as i64 - 1)
        };
        Self::new(
            (0..n)
                .map(|i| lo + &step * rational::int(i as i64))
                .collect(),
        )
    }

    /// `n` independent uniform draws on `[lo, hi]`.
    pub fn uniform_random(lo: f64, hi: f64, n: usize, rng: &mut impl rand::Rng) -> Result<Self> {
        let dist = Uniform::new_inclusive(lo, hi)
            .map_err(|e| Error::InvalidProfile(format!("bad range [{lo}, {hi}]: {e}")))?;
        let draws: Vec<f64> = (0..n).map(|_| dist.sample(rng)).collect();
        Self::from_f64(&draws)
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.s
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.s.iter().map(rational::to_f64).collect()
    }

    pub fn squares(&self) -> Vec<Rational> {
        self.s.iter().map(|v| v * v).collect()
    }

    /// `Σ s_i^{2m}`.
    pub fn square_power_sum(&self, m: usize) -> Rational {
        self.s.iter().map(|v| rational::pow(v, 2 * m)).sum()
    }

    /// `M = max s_i`.
    pub fn max(&self) -> Rational {
        self.s.iter().max().cloned().expect("non-empty")
    }

    /// `m = min s_i`.
    pub fn min(&self) -> Rational {
        self.s.iter().min().cloned().expect("non-empty")
    }

    /// `b² = (1/n) Σ s_i²`, exact.
    pub fn b_squared(&self) -> Rational {
        self.square_power_sum(1) / rational::int(self.len() as i64)
    }

    pub fn b(&self) -> f64 {
        rational::to_f64(&self.b_squared()).sqrt()
    }

    /// `a` with `a⁻² = (1/n) Σ s_i⁻²`, and `a = 0` as soon as some `s_i = 0`.
    pub fn a(&self) -> f64 {
        if self.s.iter().any(Zero::is_zero) {
            return 0.0;
        }
        let mean_inv: Rational = self.s.iter().map(|v| (v * v).recip()).sum::<Rational>()
            / rational::int(self.len() as i64);
        1.0 / rational::to_f64(&mean_inv).sqrt()
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        Self::new(self.s.iter().map(|v| v * c).collect())
    }

    /// The profile with entries reordered as `s_{order[0]}, s_{order[1]}, …` (0-based).
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::InvalidProfile(
                "reordering has the wrong length".into(),
            ));
        }
        Self::new(order.iter().map(|&i| self.s[i].clone()).collect())
    }
}

impl fmt::Display for SingularProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.s.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A textual profile description, as accepted on the command line:
///
/// * `1,2,3` or `1/2,0.75` : explicit list
/// * `const:v:n` : `n` copies of `v`
/// * `uniform:lo:hi:n` : deterministic evenly spaced grid
/// * `random:lo:hi:n` : uniform draws, seeded
/// * `file:PATH` : values separated by commas or whitespace
#[derive(Clone, Debug, PartialEq)]
pub enum ProfileSource {
    List(Vec<Rational>),
    Constant {
        value: Rational,
        n: usize,
    },
    Grid {
        lo: Rational,
        hi: Rational,
        n: usize,
    },
    Random {
        lo: f64,
        hi: f64,
        n: usize,
    },
    File(PathBuf),
}

impl ProfileSource {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let fields: Vec<&str> = text.split(':').collect();
        let count = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidProfile(format!("bad count '{s}'")))
        };
        let float = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidProfile(format!("bad number '{s}'")))
        };
        match fields.as_slice() {
            ["file", path] => Ok(ProfileSource::File(PathBuf::from(path))),
            ["const", v, n] => Ok(ProfileSource::Constant {
                value: rational::parse(v)?,
                n: count(n)?,
            }),
            ["uniform", lo, hi, n] => Ok(ProfileSource::Grid {
                lo: rational::parse(lo)?,
                hi: rational::parse(hi)?,
                n: count(n)?,
            }),
            ["random", lo, hi, n] => Ok(ProfileSource::Random {
                lo: float(lo)?,
                hi: float(hi)?,
                n: count(n)?,
            }),
            [list] => Ok(ProfileSource::List(parse_list(list)?)),
            _ => Err(Error::InvalidProfile(format!(
                "unrecognised profile '{text}'"
            ))),
        }
    }

    /// Materialises the profile. Only the `random` form consumes `seed`.
    pub fn build(&self, seed: u64) -> Result<SingularProfile> {
        match self {
            ProfileSource::List(values) => SingularProfile::new(values.clone()),
            ProfileSource::Constant { value, n } => SingularProfile::constant(value.clone(), *n),
            ProfileSource::Grid { lo, hi, n } => SingularProfile::uniform_grid(lo, hi, *n),
            ProfileSource::Random { lo, hi, n } => {
                SingularProfile::uniform_random(*lo, *hi, *n, &mut ChaCha8Rng::seed_from_u64(seed))
            }
            ProfileSource::File(path) => {
                let text = std::fs::read_to_string(path)?;
                SingularProfile::new(parse_list(&text)?)
            }
        }
    }
}

fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(rational::parse)
        .collect()
}

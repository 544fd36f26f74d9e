//! Seeded, schedule-independent batching of Monte-Carlo draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::estimate::{MomentEstimate, Statistic};

/// Draws per batch. Batch `b` uses ChaCha stream `b` of the run seed, so the
/// draws, and their merge order, never depend on the thread count.
pub const BATCH_SIZE: usize = 1024;

/// Generator for stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Running mean and sum of squared deviations (Welford), mergeable.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Accumulator {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Accumulator) {
        if other.count == 0 {
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 +=
            other.m2 + delta * delta * (self.count as f64 * other.count as f64) / total as f64;
        self.count = total;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; infinite below two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            f64::INFINITY
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        (self.variance() / self.count as f64).sqrt()
    }

    pub fn into_estimate(self, statistic: Statistic, k: usize, n: usize) -> MomentEstimate {
        MomentEstimate {
            statistic,
            k,
            n,
            mean: self.mean,
            std_error: self.std_error(),
            samples: self.count,
        }
    }
}

/// Evaluates `draw` `samples` times and accumulates each of its `D` outputs.
pub fn run_batches<const D: usize, F>(samples: usize, seed: u64, draw: F) -> [Accumulator; D]
where
    F: Fn(&mut ChaCha8Rng) -> [f64; D] + Sync,
{
    let batches = samples.div_ceil(BATCH_SIZE);
    let partial: Vec<[Accumulator; D]> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(seed, b as u64);
            let mut acc = [Accumulator::default(); D];
            let len = BATCH_SIZE.min(samples - b * BATCH_SIZE);
            for _ in 0..len {
                for (a, x) in acc.iter_mut().zip(draw(&mut rng)) {
                    a.push(x);
                }
            }
            acc
        })
        .collect();
    let mut total = [Accumulator::default(); D];
    for acc in &partial {
        for (t, a) in total.iter_mut().zip(acc) {
            t.merge(a);
        }
    }
    total
}

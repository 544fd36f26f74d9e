//! Shared inputs for the benchmarks.

use singlering::rational::{int, ratio};
use singlering::{MomentSpec, SingularProfile};

/// The evenly spaced grid on `[0.5, 4]`.
pub fn annulus_profile(n: usize) -> SingularProfile {
    SingularProfile::uniform_grid(&ratio(1, 2), &int(4), n).expect("n >= 1")
}

/// `E|u_11 ⋯ u_kk|²` at dimension `n`.
pub fn diagonal_moment(k: usize, n: usize) -> MomentSpec {
    let idx: Vec<usize> = (1..=k).collect();
    MomentSpec::new(n, idx.clone(), idx.clone(), idx.clone(), idx).expect("k <= n")
}

/// `E|u_11|^{2k}`, whose double coset is the whole group.
pub fn corner_moment(k: usize, n: usize) -> MomentSpec {
    let ones = vec![1; k];
    MomentSpec::new(n, ones.clone(), ones.clone(), ones.clone(), ones).expect("n >= 1")
}

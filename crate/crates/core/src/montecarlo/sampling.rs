use faer::{c64, Mat};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Standard complex Gaussian matrix, entries `(X + iY)/√2`.
pub fn ginibre(n: usize, rng: &mut impl Rng) -> Mat<c64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    Mat::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c64::new(re * scale, im * scale)
    })
}

/// Haar unitary: `Q` from the QR factorisation of a Ginibre matrix, with each
/// column rotated by the phase of the matching diagonal entry of `R`. Without
/// that correction the law of `Q` depends on the QR routine's sign choices.
pub fn sample_haar_unitary(n: usize, rng: &mut impl Rng) -> Mat<c64> {
    let g = ginibre(n, rng);
    let qr = g.qr();
    let mut q = qr.compute_Q();
    let r = qr.R();
    for j in 0..n {
        let d = r[(j, j)];
        let modulus = d.norm();
        if modulus > 0.0 {
            let phase = d / modulus;
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// `A = U diag(s) V` with independent Haar `U`, `V`.
pub fn sample_a(s: &[f64], rng: &mut impl Rng) -> Mat<c64> {
    let n = s.len();
    let u = sample_haar_unitary(n, rng);
    let v = sample_haar_unitary(n, rng);
    let ut = Mat::from_fn(n, n, |i, j| u[(i, j)] * s[j]);
    &ut * &v
}

/// `max |(U U* - I)_{ij}|`.
pub fn unitarity_residual(u: &Mat<c64>) -> f64 {
    let n = u.nrows();
    let gram = u * u.adjoint();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - c64::new(target, 0.0)).norm());
        }
    }
    worst
}

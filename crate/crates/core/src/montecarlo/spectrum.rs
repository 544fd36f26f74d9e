use faer::{c64, Mat};

use crate::error::{Error, Result};

/// `(|λ_max|, |λ_min|)`: largest and smallest eigenvalue moduli of a general
/// complex matrix, from a dense nonsymmetric eigensolve.
pub fn extreme_eigenvalues(a: &Mat<c64>) -> Result<(f64, f64)> {
    let eigenvalues = a
        .eigenvalues()
        .map_err(|_| Error::EigenNoConvergence { seed: None })?;
    let moduli = eigenvalues.iter().map(|z| z.norm());
    let (max, min) = moduli.fold((0.0f64, f64::INFINITY), |(hi, lo), r| {
        (hi.max(r), lo.min(r))
    });
    if !max.is_finite() || eigenvalues.is_empty() {
        return Err(Error::EigenNoConvergence { seed: None });
    }
    Ok((max, min))
}

/// Largest singular value.
pub fn operator_norm(a: &Mat<c64>) -> Result<f64> {
    let sv = a.singular_values().map_err(|_| Error::SvdNoConvergence)?;
    Ok(sv.first().copied().unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::batch::stream_rng;
    use crate::montecarlo::sampling::sample_a;

    #[test]
    fn diagonal_matrix() {
        let s = [0.7, 2.5, 1.25, 3.0];
        let t = Mat::from_fn(4, 4, |i, j| {
            if i == j {
                c64::new(s[i], 0.0)
            } else {
                c64::new(0.0, 0.0)
            }
        });
        let (hi, lo) = extreme_eigenvalues(&t).unwrap();
        assert!((hi - 3.0).abs() < 1e-12 && (lo - 0.7).abs() < 1e-12);
    }

    #[test]
    fn unitary_spectrum_on_circle() {
        let a = sample_a(&[1.0; 12], &mut stream_rng(4, 0));
        let (hi, lo) = extreme_eigenvalues(&a).unwrap();
        assert!((hi - 1.0).abs() < 1e-8 && (lo - 1.0).abs() < 1e-8);
    }

    #[test]
    fn radius_below_norm() {
        let mut rng = stream_rng(5, 0);
        for _ in 0..10 {
            let s = [0.5, 1.0, 2.0, 4.0, 0.0];
            let a = sample_a(&s, &mut rng);
            let (hi, _) = extreme_eigenvalues(&a).unwrap();
            assert!(hi <= operator_norm(&a).unwrap() + 1e-8);
            assert!(operator_norm(&a).unwrap() <= 4.0 + 1e-8);
        }
    }
}

//! The counting chain that turns `Σ_i s² ⋯ s² · #S_k⁰(i)` into
//! `(n b² + k M²)ᵏ`, evaluated link by link in exact arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::profile::SingularProfile;
use super::trace::pattern_weighted_sum;
use crate::error::{Error, Result};
use crate::permgroup::{stabilizer, Universe, MAX_DEGREE};
use crate::rational::{self, int, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct CensusReport {
    pub k: usize,
    pub n: usize,
    /// `k² / n^{k-1}`, the factor multiplying every link.
    pub prefactor: Rational,
    /// The chain, unscaled:
    /// 0. `Σ_i Π s² · #S_k⁰(i)`
    /// 1. `Σ_i Π s² · λ_1! ⋯ λ_p!`
    /// 2. `Σ_p M^{2(k-p)} e_p(s²) C(k-1, p-1) k!`
    /// 3. `Σ_p M^{2(k-p)} (n b²)^p k!(k-1)! / (p!(p-1)!(k-p)!)`
    /// 4. `Σ_p (k M²)^{k-p} (n b²)^p C(k, p)`
    /// 5. `(n b² + k M²)ᵏ`
    pub links: Vec<Rational>,
    /// Each link is at most the next one.
    pub chain_holds: bool,
    /// `Σ_{p=0}^{k} (k M²)^{k-p} (n b²)^p C(k, p) = (n b² + k M²)ᵏ`.
    pub binomial_identity_holds: bool,
    /// `#S_k⁰(i) ≤ λ_1! ⋯ λ_p!` for every equality pattern, with the
    /// stabilizer enumerated.
    pub stabilizer_bound_holds: bool,
}

impl CensusReport {
    /// `prefactor × links[2]`, the intermediate bound.
    pub fn intermediate_bound(&self) -> Rational {
        &self.prefactor * &self.links[2]
    }

    /// `prefactor × links[5] = n k² (b² + kM²/n)ᵏ`.
    pub fn final_bound(&self) -> Rational {
        &self.prefactor * &self.links[5]
    }
}

/// `e_0, …, e_k` of `x`.
fn elementary_symmetric(x: &[Rational], k: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); k + 1];
    e[0] = Rational::one();
    for v in x {
        for p in (1..=k).rev() {
            let add = &e[p - 1] * v;
            e[p] += add;
        }
    }
    e
}

fn big(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

pub fn composition_census(k: usize, profile: &SingularProfile) -> Result<CensusReport> {
    if !(2..=MAX_DEGREE).contains(&k) {
        return Err(Error::OutOfRange(format!(
            "census needs 2 <= k <= {MAX_DEGREE}, got {k}"
        )));
    }
    let n = profile.len();
    let fact = rational::factorial;
    let m2 = profile.max() * profile.max();
    let nb2 = profile.square_power_sum(1);
    let e = elementary_symmetric(&profile.squares(), k);

    let mut stabilizer_bound_holds = true;
    let link0 = pattern_weighted_sum(k, profile, |term| {
        let size = stabilizer(&term.representative(n), Universe::FixEnds).len();
        let multinomial: BigInt = term.block_sizes().into_iter().map(fact).product();
        stabilizer_bound_holds &= BigInt::from(size) <= multinomial;
        BigInt::from(size)
    });
    let link1 = pattern_weighted_sum(k, profile, |term| {
        term.block_sizes().into_iter().map(fact).product()
    });

    let (mut link2, mut link3, mut link4) = (Rational::zero(), Rational::zero(), Rational::zero());
    for (p, e_p) in e.iter().enumerate().take(k + 1).skip(1) {
        let m_pow = rational::pow(&m2, k - p);
        link2 += &m_pow * e_p * big(rational::binomial(k - 1, p - 1) * fact(k));
        let coeff = Rational::new(fact(k) * fact(k - 1), fact(p) * fact(p - 1) * fact(k - p));
        link3 += &m_pow * rational::pow(&nb2, p) * coeff;
        link4 += rational::pow(&(int(k as i64) * &m2), k - p)
            * rational::pow(&nb2, p)
            * big(rational::binomial(k, p));
    }
    let link5 = rational::pow(&(&nb2 + int(k as i64) * &m2), k);
    let full_binomial: Rational = (0..=k)
        .map(|p| {
            rational::pow(&(int(k as i64) * &m2), k - p)
                * rational::pow(&nb2, p)
                * big(rational::binomial(k, p))
        })
        .sum();

    let links = vec![link0, link1, link2, link3, link4, link5];
    let chain_holds = links.windows(2).all(|w| w[0] <= w[1]);
    Ok(CensusReport {
        k,
        n,
        prefactor: int((k * k) as i64) / rational::pow(&int(n as i64), k - 1),
        binomial_identity_holds: full_binomial == links[5],
        links,
        chain_holds,
        stabilizer_bound_holds,
    })
}

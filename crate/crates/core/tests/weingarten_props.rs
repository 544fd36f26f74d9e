use proptest::prelude::*;

use singlering::permgroup::{
    canonical_minimal_factorization, count_monotone_factorizations, symmetric_group,
};
use singlering::rational::{abs, int, pow, ratio};
use singlering::weingarten::{default_r_max, wg_bound, wg_series};
use singlering::{entry_moment, wg_exact, MomentSpec, Permutation, Rational};

fn perm(k: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=k).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn degree_and_perms() -> impl Strategy<Value = (usize, Permutation, Permutation)> {
    (1usize..=5).prop_flat_map(|k| (Just(k), perm(k), perm(k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weingarten_is_a_class_function((k, pi, g) in degree_and_perms(), extra in 0usize..6) {
        let n = k + extra;
        let conj = &(&g * &pi) * &g.inverse();
        prop_assert_eq!(wg_exact(k, n, &pi).unwrap(), wg_exact(k, n, &conj).unwrap());
        prop_assert_eq!(wg_exact(k, n, &pi).unwrap(), wg_exact(k, n, &pi.inverse()).unwrap());
    }

    #[test]
    fn canonical_factorization_has_minimal_length((k, pi, _) in degree_and_perms()) {
        let f = canonical_minimal_factorization(&pi);
        prop_assert_eq!(f.len(), pi.transposition_distance());
        prop_assert_eq!(f.len(), k - pi.cycle_count());
        prop_assert_eq!(f.product(), pi);
    }

    #[test]
    fn monotone_counts_respect_parity_and_growth((k, pi, _) in degree_and_perms(), r in 0usize..10) {
        let c = count_monotone_factorizations(&pi, r).unwrap();
        let d = pi.transposition_distance();
        if r < d || (r - d) % 2 == 1 {
            prop_assert_eq!(c, 0);
        } else if r == 0 {
            prop_assert_eq!(c, 1);
        } else {
            let pairs = (k * (k - 1) / 2) as u128;
            prop_assert!(c <= pairs.pow(r as u32 - 1));
        }
    }

    #[test]
    fn series_stays_within_its_tail_bound((k, pi, _) in (1usize..=4).prop_flat_map(|k| (Just(k), perm(k), perm(k))), extra in 0usize..20) {
        let n = 2 * k * k + extra;
        let v = wg_series(k, n, &pi, default_r_max(k)).unwrap();
        prop_assert_eq!(v.within_tail_bound(), Some(true));
    }

    #[test]
    fn bound_dominates_exact_value((k, pi, _) in degree_and_perms(), n in 1usize..=30) {
        prop_assume!(k * k < 2 * n && n >= k);
        let exact = wg_exact(k, n, &pi).unwrap();
        prop_assert!(abs(&exact) <= wg_bound(k, n, &pi).unwrap().value);
    }
}

/// `Σ_j E[u_{aj} conj(u_{aj}) X] = E[X]` for `X = |u_{r1 c1} ⋯ u_{rm cm}|²`.
fn row_sum_matches(n: usize, a: usize, pairs: &[(usize, usize)]) -> bool {
    let base = MomentSpec::from_pairs(n, pairs, pairs).unwrap();
    let target = entry_moment(&base).unwrap();
    let mut total = Rational::from_integer(0.into());
    for j in 1..=n {
        let mut extended = pairs.to_vec();
        extended.push((a, j));
        let spec = MomentSpec::from_pairs(n, &extended, &extended).unwrap();
        total += entry_moment(&spec).unwrap();
    }
    total == target
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rows_are_unit_vectors(
        n in 3usize..=6,
        raw in proptest::collection::vec((1usize..=6, 1usize..=6), 0..3),
        a in 1usize..=6,
    ) {
        let pairs: Vec<(usize, usize)> = raw.iter().map(|&(r, c)| ((r - 1) % n + 1, (c - 1) % n + 1)).collect();
        prop_assert!(row_sum_matches(n, (a - 1) % n + 1, &pairs));
    }

    #[test]
    fn moment_ignores_factor_order(
        k in 1usize..=4,
        seed in proptest::collection::vec(1usize..=3, 16),
        shuffle in any::<u64>(),
    ) {
        let n = 4;
        let t = |o: usize| seed[o..o + k].to_vec();
        let spec = MomentSpec::new(n, t(0), t(4), t(8), t(12)).unwrap();
        let all = symmetric_group(k);
        let p = &all[(shuffle as usize) % all.len()];
        let q = &all[(shuffle as usize / 7) % all.len()];
        prop_assert_eq!(entry_moment(&spec).unwrap(), entry_moment(&spec.reindexed(p, q)).unwrap());
    }
}

#[test]
fn columns_are_orthogonal() {
    // Σ_i u_{i1} conj(u_{i2}) = 0 pointwise, so multiplying by u_{12} conj(u_{11})
    // and taking expectations gives zero.
    for n in 2..=5 {
        let mut total = Rational::from_integer(0.into());
        for i in 1..=n {
            let spec = MomentSpec::from_pairs(n, &[(i, 1), (1, 2)], &[(i, 2), (1, 1)]).unwrap();
            total += entry_moment(&spec).unwrap();
        }
        assert_eq!(total, int(0), "n = {n}");
    }
}

#[test]
fn first_entry_moments_match_beta_law() {
    // |u_11|² ~ Beta(1, n-1): E|u_11|^{2k} = k! (n-1)! / (n+k-1)!.
    for n in 2..=9usize {
        for k in 1..=n.min(4) {
            let ones = vec![1; k];
            let spec = MomentSpec::new(n, ones.clone(), ones.clone(), ones.clone(), ones).unwrap();
            let fact = |m: usize| (1..=m as i64).product::<i64>();
            let expected = ratio(fact(k) * fact(n - 1), fact(n + k - 1));
            assert_eq!(entry_moment(&spec).unwrap(), expected, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn identity_value_leads_with_inverse_power() {
    // Wg(id) = n^{-k}(1 + O(n^{-2})).
    for k in 1..=4 {
        let n = 400;
        let id = Permutation::identity(k);
        let scaled = wg_exact(k, n, &id).unwrap() * pow(&int(n as i64), k);
        assert!(abs(&(scaled - int(1))) < ratio(k as i64 * k as i64, (n * n) as i64));
    }
}

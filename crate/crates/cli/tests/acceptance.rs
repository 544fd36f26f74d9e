//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Run with `cargo test -p singlering-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use singlering::montecarlo::{
    estimate_trace_moments, median, radius_rate_experiment, run_replications, ProfileFamily,
    RateConfig,
};
use singlering::permgroup::{set_partitions, symmetric_group, ConjugacyClasses, IndexTuple};
use singlering::rational::{abs, int, to_f64};
use singlering::singlering::{
    exactly_computable, f_i_cosets, f_i_wg_sum, g_i_cosets, g_i_wg_sum, sweep_counting_lemma,
    theorem_bound, trace_moment_sq, trace_moment_uu, BoundMode, LRange, SingularProfile,
};
use singlering::weingarten::{default_r_max, wg_bound, wg_series};
use singlering::{entry_moment, wg_exact, MomentSpec, Rational};

struct Outcome {
    pass: bool,
    detail: String,
}

type Check = fn() -> Outcome;

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Column tuples `j ∈ {1..n}^m`, one per orbit under permutations of
/// `{2..n}`, with the orbit size. Column 1 is kept distinguishable because the
/// identities below single it out.
fn column_orbits(m: usize, n: usize) -> Vec<(Vec<usize>, u64)> {
    let mut out = Vec::new();
    // Element 0 of each set partition stands for the fixed column 1.
    for pattern in set_partitions(m + 1) {
        let blocks = pattern.iter().max().unwrap() + 1;
        if blocks > n {
            continue;
        }
        let weight: u64 = (0..blocks as u64 - 1).map(|b| n as u64 - 1 - b).product();
        out.push((pattern[1..].iter().map(|b| b + 1).collect(), weight));
    }
    out
}

fn weighted_sum(
    m: usize,
    n: usize,
    spec: impl Fn(&[usize]) -> MomentSpec,
) -> singlering::Result<Rational> {
    let mut total = int(0);
    for (j, weight) in column_orbits(m, n) {
        total += entry_moment(&spec(&j))? * int(weight as i64);
    }
    Ok(total)
}

fn criterion_1() -> Outcome {
    // E[(Σ_j |u_1j|²)^k] = 1 and
    // E[(Σ_j u_1j conj(u_2j)) u_21 conj(u_11) (Σ_j |u_1j|²)^{k-2}] = 0.
    let mut checked = 0;
    for k in 1..=5usize {
        for n in k..=12usize {
            let norm = weighted_sum(k, n, |j| {
                let pairs: Vec<(usize, usize)> = j.iter().map(|&c| (1, c)).collect();
                MomentSpec::from_pairs(n, &pairs, &pairs).unwrap()
            });
            match norm {
                Ok(v) if v == int(1) => {}
                other => return outcome(false, format!("row norm at k = {k}, n = {n}: {other:?}")),
            }
            checked += 1;
            if k >= 2 {
                let cross = weighted_sum(k - 1, n, |j| {
                    let mut plain = vec![(1, j[0]), (2, 1)];
                    let mut conj = vec![(2, j[0]), (1, 1)];
                    for &c in &j[1..] {
                        plain.push((1, c));
                        conj.push((1, c));
                    }
                    MomentSpec::from_pairs(n, &plain, &conj).unwrap()
                });
                match cross {
                    Ok(v) if v == int(0) => {}
                    other => {
                        return outcome(false, format!("cross term at k = {k}, n = {n}: {other:?}"))
                    }
                }
                checked += 1;
            }
        }
    }
    outcome(true, format!("{checked} identities exact"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for k in 1..=4usize {
        let classes = ConjugacyClasses::get(k).unwrap();
        for n in (2 * k * k..=2 * k * k + 8).chain([4 * k * k, 10 * k * k]) {
            for class in 0..classes.len() {
                let pi = classes.representative(class);
                let v = wg_series(k, n, &pi, default_r_max(k)).unwrap();
                if v.within_tail_bound() != Some(true) {
                    return outcome(false, format!("k = {k}, n = {n}, pi = {pi}"));
                }
                checked += 1;
            }
        }
    }
    outcome(
        true,
        format!("{checked} (k, n, class) cases within the tail bound"),
    )
}

fn criterion_3() -> Outcome {
    let (mut checked, mut violations) = (0, 0);
    for k in 1..=5usize {
        for n in 1..=30usize {
            if k * k >= 2 * n || n < k {
                continue;
            }
            for pi in symmetric_group(k) {
                let exact = wg_exact(k, n, &pi).unwrap();
                if abs(&exact) > wg_bound(k, n, &pi).unwrap().value {
                    violations += 1;
                }
                checked += 1;
            }
        }
    }
    outcome(
        violations == 0,
        format!("{violations} violations in {checked} cases"),
    )
}

fn criterion_4() -> Outcome {
    let (mut rows, mut bad, mut q0) = (0, 0, 0);
    for k in 2..=6 {
        for r in sweep_counting_lemma(k).unwrap() {
            rows += 1;
            bad += usize::from(!r.check.ok);
            q0 += usize::from(r.q == 0 && r.check.count > 1);
        }
    }
    outcome(
        bad == 0 && q0 == 0,
        format!("{rows} rows, {bad} bound violations, {q0} q = 0 counts above 1"),
    )
}

fn criterion_5() -> Outcome {
    let (mut checked, mut skipped, mut mismatches, mut literal_differs) = (0, 0, 0, 0);
    for k in 1..=4usize {
        for n in 1..=4usize {
            for pattern in set_partitions(k) {
                if pattern.iter().max().unwrap() + 1 > n {
                    continue;
                }
                let i = IndexTuple::new(pattern.iter().map(|b| b + 1).collect(), n).unwrap();
                if k >= 2 && n + 1 >= k {
                    let coset = f_i_cosets(&i).unwrap();
                    mismatches += usize::from(coset != f_i_wg_sum(&i, LRange::Matching).unwrap());
                    literal_differs += usize::from(coset != f_i_wg_sum(&i, LRange::All).unwrap());
                    checked += 1;
                } else if k >= 2 {
                    skipped += 1;
                }
                if n >= k {
                    mismatches += usize::from(g_i_cosets(&i).unwrap() != g_i_wg_sum(&i).unwrap());
                    checked += 1;
                } else {
                    skipped += 1;
                }
            }
        }
    }
    outcome(
        mismatches == 0,
        format!(
            "{mismatches} mismatches in {checked} (pattern, n) pairs; {skipped} skipped where the \
             Weingarten system is singular; with unrestricted l1, l2 the F form differs on {literal_differs}"
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for (n, k) in [(3usize, 2usize), (4, 2), (3, 3)] {
        let ones = vec![1i64; n];
        let ramp: Vec<i64> = (1..=n as i64).collect();
        for s in [ones, ramp] {
            let p = SingularProfile::from_integers(&s).unwrap();
            let [uu, sq] = estimate_trace_moments(k, &p, 100_000, 2024 + cases).unwrap();
            worst = worst.max(uu.z_score(to_f64(&trace_moment_uu(k, &p).unwrap())));
            worst = worst.max(sq.z_score(to_f64(&trace_moment_sq(k, &p).unwrap())));
            cases += 1;
        }
    }
    outcome(
        worst < 4.0,
        format!(
            "largest deviation {worst:.2} SE over {} comparisons",
            2 * cases
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut table: Vec<(BoundMode, usize, f64)> = Vec::new();
    for n in 1..=6usize {
        let profiles = [
            vec![1i64; n],
            (1..=n as i64).collect::<Vec<_>>(),
            (0..n as i64).map(|i| 1 + i * i).collect(),
        ];
        for s in profiles {
            let p = SingularProfile::from_integers(&s).unwrap();
            for k in 1..=3 {
                for mode in [BoundMode::Uu, BoundMode::Sq] {
                    if !exactly_computable(k, n, mode == BoundMode::Sq) {
                        continue;
                    }
                    let ratio = theorem_bound(k, &p, mode, 0.5).unwrap().ratio_f64();
                    match ratio {
                        Some(r) if r.is_finite() => table.push((mode, k, r)),
                        _ => {
                            return outcome(
                                false,
                                format!("no finite ratio at n = {n}, k = {k}, s = {s:?}"),
                            )
                        }
                    }
                }
            }
        }
    }
    let mut detail = Vec::new();
    let mut pass = true;
    for mode in [BoundMode::Uu, BoundMode::Sq] {
        let of = |k: usize| {
            table
                .iter()
                .filter(move |t| t.0 == mode && t.1 == k)
                .map(|t| t.2)
        };
        let base = of(1).fold(0.0, f64::max);
        let top = (1..=3).flat_map(of).fold(0.0, f64::max);
        pass &= top <= 10.0 * base;
        detail.push(format!("{mode:?}: max ratio {top:.3}, k = 1 max {base:.3}"));
    }
    outcome(
        pass,
        format!("{} ratios; {}", table.len(), detail.join("; ")),
    )
}

fn criterion_8() -> Outcome {
    let family: ProfileFamily = "random:0.5:4".parse().unwrap();
    let reps = run_replications(&family, 512, 20, 512_000).unwrap();
    let hi = median(&reps.iter().map(|r| r.lambda_max).collect::<Vec<_>>());
    let lo = median(&reps.iter().map(|r| r.lambda_min).collect::<Vec<_>>());
    let pass = (hi - 2.47).abs() <= 0.15 && (lo - 1.41).abs() <= 0.15;
    outcome(
        pass,
        format!("median |λ_max| = {hi:.4}, median |λ_min| = {lo:.4}"),
    )
}

fn criterion_9() -> Outcome {
    let config = RateConfig {
        family: "uniform:0.5:4".parse().unwrap(),
        n_grid: vec![64, 128, 256, 512],
        replications: 40,
        seed: 9_000,
    };
    let result = radius_rate_experiment(&config).unwrap();
    let medians: Vec<f64> = result
        .summaries
        .iter()
        .map(|s| s.median_positive_deviation)
        .collect();
    let monotone = medians.windows(2).all(|w| w[1] <= w[0]);
    let slope = result.fit.map(|f| f.slope);
    let pass = monotone && slope.is_some_and(|s| s <= 0.0);
    let shown: Vec<String> = medians.iter().map(|m| format!("{m:.4}")).collect();
    let slope = slope.map_or("undefined".to_string(), |s| format!("{s:.4}"));
    outcome(
        pass,
        format!("medians [{}], slope {slope}", shown.join(", ")),
    )
}

fn run_twice(args: &[&str], file: &str) -> Result<bool, String> {
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let path = dir.path().join(file);
        let status = Command::new(env!("CARGO_BIN_EXE_singlering"))
            .args(args)
            .args(["--threads", threads, "--output", path.to_str().unwrap()])
            .env_remove("SINGLERING_OUTPUT_DIR")
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(String::from_utf8_lossy(&status.stderr).into_owned());
        }
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    Ok(outputs[0] == outputs[1] && !outputs[0].is_empty())
}

fn criterion_10() -> Outcome {
    let runs = [
        (
            vec![
                "mc-moment",
                "--k",
                "2",
                "--profile",
                "random:0.5:4:5",
                "--samples",
                "5000",
                "--seed",
                "77",
            ],
            "mc.csv",
        ),
        (
            vec![
                "spectrum-experiment",
                "--kind",
                "rate",
                "--n-grid",
                "16,32",
                "--replications",
                "10",
                "--seed",
                "5",
            ],
            "rate.csv",
        ),
        (
            vec![
                "spectrum-experiment",
                "--kind",
                "tail",
                "--n",
                "16",
                "--replications",
                "100",
                "--seed",
                "6",
            ],
            "tail.csv",
        ),
    ];
    for (args, file) in &runs {
        match run_twice(args, file) {
            Ok(true) => {}
            Ok(false) => return outcome(false, format!("{} output differs between runs", args[0])),
            Err(e) => return outcome(false, format!("{} failed: {e}", args[0])),
        }
    }
    outcome(
        true,
        format!(
            "{} commands byte-identical across reruns and thread counts",
            runs.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Option<Duration>); 10] = [
        (
            "Weingarten oracle reproduces unitarity identities",
            criterion_1,
            Some(Duration::from_secs(60)),
        ),
        (
            "series truncation within tail bound",
            criterion_2,
            Some(Duration::from_secs(60)),
        ),
        (
            "|Wg| bounded by the closed-form majorant",
            criterion_3,
            None,
        ),
        (
            "exhaustive counting lemma, k <= 6",
            criterion_4,
            Some(Duration::from_secs(300)),
        ),
        ("dual-path F_i / G_i equality", criterion_5, None),
        (
            "exact trace moments vs Monte Carlo",
            criterion_6,
            Some(Duration::from_secs(600)),
        ),
        ("theorem bound ratios finite and sane", criterion_7, None),
        (
            "annulus radii at n = 512",
            criterion_8,
            Some(Duration::from_secs(900)),
        ),
        (
            "deviation rate non-increasing, slope <= 0",
            criterion_9,
            None,
        ),
        (
            "Monte-Carlo output byte-identical on rerun",
            criterion_10,
            None,
        ),
    ];
    let mut failures = 0;
    for (idx, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let Outcome { pass, detail } = check();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let ok = pass && in_time;
        failures += usize::from(!ok);
        let timing = match limit {
            Some(l) if !in_time => format!(
                "{:.1}s, over the {}s limit",
                elapsed.as_secs_f64(),
                l.as_secs()
            ),
            _ => format!("{:.1}s", elapsed.as_secs_f64()),
        };
        println!(
            "{} {:>2}. {name}: {detail} [{timing}]",
            if ok { "PASS" } else { "FAIL" },
            idx + 1
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

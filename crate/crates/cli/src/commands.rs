use serde::Serialize;
use singlering::montecarlo::{
    estimate_trace_moments, load_config, radius_rate_experiment, tail_experiment, ExperimentConfig,
    ExperimentRecord, MomentEstimate, ProfileFamily, RateConfig, TailConfig,
};
use singlering::rational::to_f64;
use singlering::singlering::{
    exactly_computable, sweep_counting_lemma, theorem_bound, BoundMode, ProfileSource,
    SingularProfile, MAX_LEMMA_DEGREE,
};
use singlering::weingarten::{default_r_max, wg_alt_bounds, wg_bound, wg_series};
use singlering::{MomentSpec, Permutation};

use crate::args::{
    EntryArgs, ExactArgs, GlobalArgs, Kind, LemmaArgs, McArgs, Mode, ProfileArgs, SpectrumArgs,
    WgArgs,
};
use crate::output::{emit, sibling, write_to};
use crate::Failure;

/// A named scalar; exact values are printed as reduced fractions.
#[derive(Serialize)]
struct Quantity {
    quantity: String,
    value: String,
}

fn quantity(name: impl Into<String>, value: impl ToString) -> Quantity {
    Quantity {
        quantity: name.into(),
        value: value.to_string(),
    }
}

pub fn wg(args: &WgArgs, global: &GlobalArgs) -> Result<(), Failure> {
    let pi = Permutation::parse_cycles(args.k, &args.pi)?;
    let r_max = args.r_max.unwrap_or_else(|| default_r_max(args.k));
    let value = wg_series(args.k, args.n, &pi, r_max)?;
    let mut rows = vec![
        quantity("k", args.k),
        quantity("n", args.n),
        quantity("pi", &pi),
    ];
    match &value.exact {
        Some(exact) => {
            rows.push(quantity("exact", exact));
            rows.push(quantity("exact_f64", to_f64(exact)));
        }
        None => rows.push(quantity("exact", "undefined (n < k)")),
    }
    for (r, partial) in value.partial_sums.iter().enumerate() {
        rows.push(quantity(format!("series_r{r}"), partial));
    }
    let tail = value
        .tail_bound
        .as_ref()
        .map_or("inf".to_string(), ToString::to_string);
    rows.push(quantity("tail_bound", tail));
    if let Some(err) = value.truncation_error() {
        rows.push(quantity("truncation_error", err));
    }
    match wg_bound(args.k, args.n, &pi) {
        Ok(bound) => {
            rows.push(quantity("bound", &bound.value));
            rows.push(quantity("bound_f64", to_f64(&bound.value)));
        }
        Err(_) => rows.push(quantity("bound", "inf (k^2 >= 2n)")),
    }
    let alt = wg_alt_bounds(args.k, args.n, &pi, args.j, args.kj);
    let show = |b: Option<f64>| b.map_or("n/a".to_string(), |v| v.to_string());
    rows.push(quantity(
        format!("power_bound_j{}", args.j),
        show(alt.power_bound),
    ));
    rows.push(quantity("catalan_bound", show(alt.catalan_bound)));
    emit(&rows, global, "wg")?;
    if value.within_tail_bound() == Some(false) {
        return Err(Failure::Compute(
            "series truncation error exceeds its tail bound".into(),
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct EntryRow {
    n: usize,
    rows: String,
    cols: String,
    conj_rows: String,
    conj_cols: String,
    value: String,
    value_f64: f64,
}

fn join(t: &[usize]) -> String {
    t.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn entry_moment(args: &EntryArgs, global: &GlobalArgs) -> Result<(), Failure> {
    let spec = MomentSpec::new(
        args.n,
        args.rows.clone(),
        args.cols.clone(),
        args.conj_rows.clone(),
        args.conj_cols.clone(),
    )?;
    let value = singlering::entry_moment(&spec)?;
    let row = EntryRow {
        n: spec.n,
        rows: join(&spec.rows),
        cols: join(&spec.cols),
        conj_rows: join(&spec.conj_rows),
        conj_cols: join(&spec.conj_cols),
        value_f64: to_f64(&value),
        value: value.to_string(),
    };
    emit(&[row], global, "entry-moment")?;
    Ok(())
}

fn build_profile(args: &ProfileArgs) -> Result<SingularProfile, Failure> {
    Ok(ProfileSource::parse(&args.profile)?.build(args.seed)?)
}

fn modes(mode: Mode) -> Vec<BoundMode> {
    match mode {
        Mode::Uu => vec![BoundMode::Uu],
        Mode::Sq => vec![BoundMode::Sq],
        Mode::Both => vec![BoundMode::Uu, BoundMode::Sq],
    }
}

fn stat_name(mode: BoundMode) -> &'static str {
    match mode {
        BoundMode::Uu => "trace_uu",
        BoundMode::Sq => "trace_sq",
    }
}

#[derive(Serialize)]
struct ExactRow {
    stat: &'static str,
    k: usize,
    n: usize,
    exact: String,
    exact_f64: Option<f64>,
    bound_core: String,
    ratio: Option<f64>,
    applicable: bool,
}

pub fn exact_moment(args: &ExactArgs, global: &GlobalArgs) -> Result<(), Failure> {
    let profile = build_profile(&args.profile)?;
    let n = profile.len();
    let mut rows = Vec::new();
    for mode in modes(args.mode) {
        if !exactly_computable(args.k, n, mode == BoundMode::Sq) {
            return Err(Failure::Usage(format!(
                "{} is not exactly computable at k = {}, n = {n}",
                stat_name(mode),
                args.k
            )));
        }
        let report = theorem_bound(args.k, &profile, mode, args.epsilon)?;
        rows.push(ExactRow {
            stat: stat_name(mode),
            k: args.k,
            n,
            exact: report
                .exact_moment
                .as_ref()
                .map_or(String::new(), ToString::to_string),
            exact_f64: report.exact_moment.as_ref().map(to_f64),
            bound_core: report.bound_core.to_string(),
            ratio: report.ratio_f64(),
            applicable: report.applicable,
        });
    }
    emit(&rows, global, "exact-moment")?;
    Ok(())
}

#[derive(Serialize)]
struct LemmaLine {
    alpha: String,
    l1: usize,
    l2: usize,
    q: usize,
    count: u64,
    bound: String,
    ok: bool,
    injective: Option<bool>,
}

pub fn verify_lemmas(args: &LemmaArgs, global: &GlobalArgs) -> Result<(), Failure> {
    if !(2..=MAX_LEMMA_DEGREE).contains(&args.k) {
        return Err(Failure::Usage(format!(
            "--k must lie in 2..={MAX_LEMMA_DEGREE}"
        )));
    }
    let rows: Vec<LemmaLine> = sweep_counting_lemma(args.k)?
        .into_iter()
        .map(|r| LemmaLine {
            alpha: r.alpha,
            l1: r.l1,
            l2: r.l2,
            q: r.q,
            count: r.check.count,
            bound: r.check.bound.to_string(),
            ok: r.check.ok,
            injective: r.check.injective,
        })
        .collect();
    emit(&rows, global, "verify-lemmas")?;
    let violations = rows.iter().filter(|r| !r.ok).count();
    let collisions = rows.iter().filter(|r| r.injective == Some(false)).count();
    eprintln!(
        "k = {}: {} rows, {violations} bound violations, {collisions} injectivity failures",
        args.k,
        rows.len()
    );
    if violations + collisions > 0 {
        return Err(Failure::Compute("counting lemma violated".into()));
    }
    Ok(())
}

fn estimate_records(
    estimate: &MomentEstimate,
    name: &str,
    seed: u64,
    profile: &SingularProfile,
) -> [ExperimentRecord; 2] {
    let n = profile.len();
    [
        ExperimentRecord::new(n, estimate.k, seed, name, estimate.mean, profile),
        ExperimentRecord::new(
            n,
            estimate.k,
            seed,
            &format!("{name}_se"),
            estimate.std_error,
            profile,
        ),
    ]
}

pub fn mc_moment(args: &McArgs, global: &GlobalArgs) -> Result<(), Failure> {
    let profile = build_profile(&args.profile)?;
    let seed = args.profile.seed;
    let [uu, sq] = estimate_trace_moments(args.k, &profile, args.samples, seed)?;
    let mut records = Vec::new();
    let mut worst: f64 = 0.0;
    for mode in modes(args.mode) {
        let estimate = if mode == BoundMode::Uu { &uu } else { &sq };
        records.extend(estimate_records(estimate, stat_name(mode), seed, &profile));
        if args.check && exactly_computable(args.k, profile.len(), mode == BoundMode::Sq) {
            let exact = theorem_bound(args.k, &profile, mode, 0.5)?
                .exact_moment
                .expect("computable");
            let z = estimate.z_score(to_f64(&exact));
            eprintln!(
                "{}: mean {} ± {} vs exact {exact} ({z:.2} SE)",
                stat_name(mode),
                estimate.mean,
                estimate.std_error
            );
            worst = worst.max(z);
        }
    }
    emit(&records, global, "mc-moment")?;
    if worst > args.max_z {
        return Err(Failure::Compute(format!(
            "Monte-Carlo estimate {worst:.2} standard errors from the exact value"
        )));
    }
    Ok(())
}

fn experiment_config(args: &SpectrumArgs) -> Result<ExperimentConfig, Failure> {
    if let Some(path) = &args.config {
        return Ok(load_config(path)?);
    }
    let family: ProfileFamily = args.family.parse()?;
    Ok(match args.kind {
        Kind::Rate => ExperimentConfig::Rate(RateConfig {
            family,
            n_grid: args.n_grid.clone(),
            replications: args.replications,
            seed: args.seed,
        }),
        Kind::Tail => ExperimentConfig::Tail(TailConfig {
            family,
            n: args.n,
            deltas: args.deltas.clone(),
            replications: args.replications,
            seed: args.seed,
        }),
    })
}

pub fn spectrum_experiment(args: &SpectrumArgs, global: &GlobalArgs) -> Result<(), Failure> {
    let config = experiment_config(args)?;
    match config {
        ExperimentConfig::Rate(config) => {
            let result = radius_rate_experiment(&config)?;
            let path = emit(&result.records, global, "spectrum-experiment")?;
            let summary_path = args
                .summary_output
                .clone()
                .or_else(|| path.as_deref().map(|p| sibling(p, "summary")));
            match summary_path {
                Some(p) => write_to(&result.summaries, global, Some(&p))?,
                None => {
                    for s in &result.summaries {
                        eprintln!(
                            "n = {}: median positive deviation {:.4}, median |λ_max| {:.4}, median |λ_min| {:.4}",
                            s.n, s.median_positive_deviation, s.median_lambda_max, s.median_lambda_min
                        );
                    }
                }
            }
            match result.fit {
                Some(fit) => eprintln!(
                    "log-log slope {:.4}{}",
                    fit.slope,
                    fit.ci.map_or(String::new(), |(lo, hi)| format!(
                        " (95% CI [{lo:.4}, {hi:.4}])"
                    ))
                ),
                None => eprintln!("log-log slope undefined (some median deviation is zero)"),
            }
        }
        ExperimentConfig::Tail(config) => {
            let result = tail_experiment(&config)?;
            let path = emit(&result.records, global, "spectrum-experiment")?;
            let curve_path = args
                .summary_output
                .clone()
                .or_else(|| path.as_deref().map(|p| sibling(p, "tail")));
            match curve_path {
                Some(p) => write_to(&result.curve, global, Some(&p))?,
                None => {
                    for t in &result.curve {
                        eprintln!(
                            "delta = {}: P(max) = {}, P(min) = {}",
                            t.delta, t.p_max, t.p_min
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

//! Haar sampling, Monte-Carlo trace moments and spectral experiments.

mod batch;
mod estimate;
mod experiment;
mod io;
mod sampling;
mod spectrum;

pub use batch::{run_batches, stream_rng, Accumulator, BATCH_SIZE};
pub use estimate::{
    estimate_extreme_moduli, estimate_trace_moment, estimate_trace_moments, trace_statistics,
    MomentEstimate, Statistic,
};
pub use experiment::{
    fit_log_log, median, radius_rate_experiment, replication_seed, run_replication,
    run_replications, tail_experiment, ExperimentConfig, ExperimentRecord, ProfileFamily,
    RateConfig, RateFit, RateResult, RateSummary, Replication, TailConfig, TailPoint, TailResult,
};
pub use io::{
    load_config, read_records, read_rows, write_records, write_rows, write_tail_curve,
    OutputFormat, RECORD_COLUMNS,
};
pub use sampling::{ginibre, sample_a, sample_haar_unitary, unitarity_residual};
pub use spectrum::{extreme_eigenvalues, operator_norm};

//! Monte Carlo harness: simulated examinees, full adaptive sessions, and
//! replicated experiments with deterministic seeding.
//!
//! Every replication draws its responses from a dedicated ChaCha8 stream
//! (`seed_from_u64(master_seed)` with the replication index as the stream
//! id), so results are bit-reproducible for a given `(master_seed, config)`
//! regardless of how many worker threads execute the replications.
//! Aggregation is a fixed-order reduction over replication indices.
//!
//! Per checkpoint `n` the harness records the estimate, its observed
//! information, and the standardized error `sqrt(v_n) * (theta_hat - theta)`
//! where `v_n` sums the per-item information ceilings
//! (`max_info_closed_form`): `n/4` for Rasch items and `sum a_i^2 / 4` for
//! guessing-free items. The sequential-design theory says these
//! standardized errors are asymptotically standard normal, which the
//! summary quantifies through their variance and a Kolmogorov-Smirnov
//! statistic.

use std::env;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::designer::{self, DesignPolicy, ItemBank, SessionState};
use crate::estimator::{self, EstimateSource, EstimatingMode, Response, Transcript};
use crate::irt::{self, Item, ModelKind};

/// Worker-thread cap; `0` or unset means automatic.
pub const THREADS_ENV_VAR: &str = "CAT_LAB_THREADS";

/// Errors from simulation runs.
#[derive(Debug, Clone, PartialEq)]
pub enum SimulatorError {
    InvalidConfig(String),
    InvalidPolicy(Vec<String>),
    MismatchedConfigs(String),
    /// A session failed; carries the replication index.
    Replication { rep: usize, message: String },
}

impl fmt::Display for SimulatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Self::InvalidPolicy(violations) => {
                write!(f, "invalid policy: {}", violations.join("; "))
            }
            Self::MismatchedConfigs(msg) => write!(f, "mismatched configurations: {msg}"),
            Self::Replication { rep, message } => {
                write!(f, "replication {rep} failed: {message}")
            }
        }
    }
}

impl std::error::Error for SimulatorError {}

/// A full experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub theta_true: f64,
    pub model: ModelKind,
    pub policy: DesignPolicy,
    pub bank: ItemBank,
    pub n_items: usize,
    pub replications: usize,
    pub master_seed: u64,
    /// Ascending step counts at which estimates are recorded; each must lie
    /// in `[2, n_items]` (no estimate can exist after a single response).
    pub checkpoints: Vec<usize>,
}

impl SimulationConfig {
    /// Estimating mode implied by the model.
    pub fn mode(&self) -> EstimatingMode {
        match self.model {
            ModelKind::Rasch => EstimatingMode::RaschScore,
            ModelKind::TwoPl => EstimatingMode::TwoPlScore,
            ModelKind::ThreePl => EstimatingMode::ThreePlModified,
        }
    }
}

/// Default checkpoint grid: log-spaced view of the variance decay, always
/// including the final step.
pub fn default_checkpoints(n_items: usize) -> Vec<usize> {
    let mut cps: Vec<usize> = [25, 50, 100, 200, 400]
        .into_iter()
        .filter(|&c| c < n_items)
        .collect();
    cps.push(n_items);
    cps
}

/// Estimate snapshot at one checkpoint of one replication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckpointRecord {
    pub n: usize,
    pub theta_hat: f64,
    /// Observed information at `theta_hat` over the first `n` items.
    pub observed_info: f64,
    /// `sqrt(v_n) * (theta_hat - theta_true)`.
    pub std_error: f64,
    /// Estimate did not come from a root of the estimating equation (the
    /// fallback sequence was active, or the first flip had not occurred).
    pub fallback: bool,
}

/// Per-replication checkpoint records.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationResult {
    pub rep: usize,
    pub records: Vec<CheckpointRecord>,
}

/// Aggregates across replications at one checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub n: usize,
    pub bias: f64,
    pub variance: f64,
    pub mse: f64,
    /// Mean of `4 I_n(theta_hat) / n`; populated for Rasch runs only.
    pub info_ratio: Option<f64>,
    /// Sample variance of the standardized errors.
    pub std_err_var: f64,
    /// Kolmogorov-Smirnov distance of the standardized errors from N(0, 1).
    pub ks_stat: f64,
    /// Replications without a root-based estimate at this checkpoint.
    pub fallback_count: usize,
}

/// One row per checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryTable {
    pub rows: Vec<SummaryRow>,
}

/// Draws a single response: correct with probability `icc(theta_true,
/// item)`. Consumes exactly one uniform draw.
#[inline]
pub fn draw_response(theta_true: f64, item: &Item, rng: &mut impl Rng) -> bool {
    rng.random::<f64>() < irt::icc(theta_true, item)
}

/// Runs one adaptive session of `n_items` steps and returns its transcript.
///
/// Items come from the policy/bank via the designer; estimates are solved
/// after every step from the first response flip onward, with the fallback
/// index set to the current step count whenever the estimating equation has
/// no root.
pub fn run_session(
    theta_true: f64,
    mode: EstimatingMode,
    policy: &DesignPolicy,
    bank: &ItemBank,
    n_items: usize,
    tol: f64,
    rng: &mut impl Rng,
) -> Result<Transcript, String> {
    let mut bank = bank.clone();
    let mut state = SessionState::new(n_items);
    for k in 1..=n_items {
        let item = designer::next_item(&state, policy, &mut bank).map_err(|e| e.to_string())?;
        let correct = draw_response(theta_true, &item, rng);
        state.transcript.push(Response::new(item, correct));
        if state.transcript.has_both_outcomes() {
            let estimate = estimator::solve_ability(&state.transcript, mode, k, tol)
                .map_err(|e| e.to_string())?;
            state.transcript.record_estimate(estimate);
        }
    }
    Ok(state.transcript)
}

/// Ladder position after `n` steps, used as the recorded value when no
/// estimate exists yet (possible only while every response has matched the
/// first one).
fn ladder_value(policy: &DesignPolicy, transcript: &Transcript, n: usize) -> f64 {
    let sign = match transcript.steps().first() {
        Some(step) if step.response.correct => 1.0,
        Some(_) => -1.0,
        None => 0.0,
    };
    policy.b1 + sign * policy.eps0 * n as f64
}

fn checkpoint_record(
    transcript: &Transcript,
    policy: &DesignPolicy,
    theta_true: f64,
    n: usize,
) -> CheckpointRecord {
    let step = &transcript.steps()[n - 1];
    let (theta_hat, observed_info, fallback) = match &step.estimate_after {
        Some(est) => (
            est.value,
            est.observed_info,
            est.source == EstimateSource::Fallback,
        ),
        None => {
            let value = ladder_value(policy, transcript, n);
            let info = estimator::observed_info_items(value, transcript.prefix_items(n));
            (value, info, true)
        }
    };
    let v_n = estimator::normalizer_v_items(transcript.prefix_items(n));
    CheckpointRecord {
        n,
        theta_hat,
        observed_info,
        std_error: v_n.sqrt() * (theta_hat - theta_true),
        fallback,
    }
}

fn validate_config(config: &SimulationConfig) -> Result<(), SimulatorError> {
    if config.replications == 0 {
        return Err(SimulatorError::InvalidConfig("replications must be >= 1".into()));
    }
    if config.n_items < 2 {
        return Err(SimulatorError::InvalidConfig("n_items must be >= 2".into()));
    }
    if config.checkpoints.is_empty() {
        return Err(SimulatorError::InvalidConfig("at least one checkpoint is required".into()));
    }
    if config.checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SimulatorError::InvalidConfig(
            "checkpoints must be strictly ascending".into(),
        ));
    }
    for &cp in &config.checkpoints {
        if cp < 2 || cp > config.n_items {
            return Err(SimulatorError::InvalidConfig(format!(
                "checkpoint {cp} outside the feasible range [2, {}]",
                config.n_items
            )));
        }
    }

    let check = designer::validate_policy(&config.policy);
    if !check.is_ok() {
        return Err(SimulatorError::InvalidPolicy(check.violations));
    }

    match &config.bank {
        ItemBank::Idealized => {
            // every scheduled (a, c) must be admissible under the model
            for k in 1..=config.n_items {
                let a = designer::a_at(&config.policy.a_schedule, k, config.n_items)
                    .map_err(|e| SimulatorError::InvalidConfig(e.to_string()))?;
                let c = designer::c_at(&config.policy.c_rule, k)
                    .map_err(|e| SimulatorError::InvalidConfig(e.to_string()))?;
                let probe = Item::new(a, 0.0, c)
                    .map_err(|e| SimulatorError::InvalidConfig(e.to_string()))?;
                if !config.model.admits(&probe) {
                    return Err(SimulatorError::InvalidConfig(format!(
                        "scheduled item at step {k} (a = {a}, c = {c}) is not a {} item",
                        config.model
                    )));
                }
            }
        }
        ItemBank::Finite { items, .. } => {
            if items.len() < config.n_items {
                return Err(SimulatorError::InvalidConfig(format!(
                    "bank of {} items cannot supply {} steps",
                    items.len(),
                    config.n_items
                )));
            }
            for (i, item) in items.iter().enumerate() {
                if !config.model.admits(item) {
                    return Err(SimulatorError::InvalidConfig(format!(
                        "bank item {i} is not a {} item",
                        config.model
                    )));
                }
            }
        }
    }
    Ok(())
}

fn threads_from_env() -> Option<usize> {
    let raw = env::var(THREADS_ENV_VAR).ok()?;
    match raw.trim().parse::<usize>() {
        Ok(0) | Err(_) => None,
        Ok(n) => Some(n),
    }
}

pub(crate) fn with_worker_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match threads_from_env().and_then(|n| {
        rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()
    }) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

/// RNG stream for one replication of a seeded experiment.
pub fn replication_rng(master_seed: u64, rep: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(rep as u64);
    rng
}

fn run_one_replication(
    config: &SimulationConfig,
    rep: usize,
) -> Result<ReplicationResult, SimulatorError> {
    let mut rng = replication_rng(config.master_seed, rep);
    let transcript = run_session(
        config.theta_true,
        config.mode(),
        &config.policy,
        &config.bank,
        config.n_items,
        estimator::DEFAULT_TOL,
        &mut rng,
    )
    .map_err(|message| SimulatorError::Replication { rep, message })?;
    let records = config
        .checkpoints
        .iter()
        .map(|&n| checkpoint_record(&transcript, &config.policy, config.theta_true, n))
        .collect();
    Ok(ReplicationResult { rep, records })
}

/// Runs all replications and aggregates them per checkpoint.
///
/// The result is a pure function of `(config, master_seed)`: replications
/// use independent derived streams and the reduction runs in replication
/// order whatever the worker count.
pub fn run_replications(config: &SimulationConfig) -> Result<SummaryTable, SimulatorError> {
    validate_config(config)?;
    let results: Vec<ReplicationResult> = with_worker_pool(|| {
        (0..config.replications)
            .into_par_iter()
            .map(|rep| run_one_replication(config, rep))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(summarize(config, &results))
}

fn summarize(config: &SimulationConfig, results: &[ReplicationResult]) -> SummaryTable {
    let r = results.len();
    let rows = config
        .checkpoints
        .iter()
        .enumerate()
        .map(|(ci, &n)| {
            let records = results.iter().map(|res| &res.records[ci]);
            let mut sum_err = 0.0;
            let mut sum_sq_err = 0.0;
            let mut sum_info_ratio = 0.0;
            let mut fallback_count = 0;
            let mut std_errors = Vec::with_capacity(r);
            for rec in records {
                let err = rec.theta_hat - config.theta_true;
                sum_err += err;
                sum_sq_err += err * err;
                sum_info_ratio += 4.0 * rec.observed_info / n as f64;
                if rec.fallback {
                    fallback_count += 1;
                }
                std_errors.push(rec.std_error);
            }
            let rf = r as f64;
            let bias = sum_err / rf;
            let mse = sum_sq_err / rf;
            let variance = if r > 1 {
                (sum_sq_err - rf * bias * bias) / (rf - 1.0)
            } else {
                0.0
            };
            let info_ratio = match config.model {
                ModelKind::Rasch => Some(sum_info_ratio / rf),
                _ => None,
            };
            SummaryRow {
                n,
                bias,
                variance,
                mse,
                info_ratio,
                std_err_var: sample_variance(&std_errors),
                ks_stat: ks_statistic(&std_errors),
                fallback_count,
            }
        })
        .collect();
    SummaryTable { rows }
}

fn sample_variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)
}

/// Kolmogorov-Smirnov distance between the empirical distribution of
/// `samples` and the standard normal.
pub fn ks_statistic(samples: &[f64]) -> f64 {
    assert!(!samples.is_empty(), "KS statistic of an empty sample");
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let normal = Normal::new(0.0, 1.0).unwrap();
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let cdf = normal.cdf(x);
        d = d.max(cdf - i as f64 / n).max((i + 1) as f64 / n - cdf);
    }
    d
}

/// Runs two experiments that differ only in their discrimination schedule,
/// using common random numbers (the same per-replication streams), and
/// returns both summaries over the shared checkpoint grid.
pub fn mse_compare(
    ascending: &SimulationConfig,
    descending: &SimulationConfig,
) -> Result<(SummaryTable, SummaryTable), SimulatorError> {
    if ascending.checkpoints != descending.checkpoints {
        return Err(SimulatorError::MismatchedConfigs(
            "checkpoint grids differ".into(),
        ));
    }
    if !same_except_schedule(ascending, descending) {
        return Err(SimulatorError::MismatchedConfigs(
            "configurations may differ only in the a schedule".into(),
        ));
    }
    Ok((run_replications(ascending)?, run_replications(descending)?))
}

fn same_except_schedule(a: &SimulationConfig, b: &SimulationConfig) -> bool {
    let (pa, pb) = (&a.policy, &b.policy);
    a.theta_true == b.theta_true
        && a.model == b.model
        && a.bank == b.bank
        && a.n_items == b.n_items
        && a.replications == b.replications
        && a.master_seed == b.master_seed
        && pa.b1 == pb.b1
        && pa.eps0 == pb.eps0
        && pa.a_bounds == pb.a_bounds
        && pa.c_rule == pb.c_rule
        && pa.delta0 == pb.delta0
        && pa.b_rule == pb.b_rule
}

//! Deterministic demonstrations of what goes wrong when the discrimination
//! schedule leaves its bounds.
//!
//! Unbounded growth (`a_k = k^3`): starting from an initial estimate below
//! `theta - 1 - pi^2/6` there is a response pattern - all incorrect through
//! step `n0`, all correct afterwards - of positive probability under which
//! the estimate can never climb back: each correct answer moves it by at
//! most `1/k^2` because the huge discrimination saturates every earlier
//! item. [`divergent_trajectory`] replays that pattern and verifies the
//! per-step ceiling `theta_hat_k <= theta_hat_0 + sum 1/j^2` at every step,
//! which keeps the estimate below `theta - 1` forever.
//!
//! Decay to zero (`a_j = 1/j`): the total information of the whole test is
//! capped by `(1/4) sum 1/j^2 < pi^2/24`, so the estimator has a noise
//! floor no test length can beat. [`bounded_info_demo`] checks the cap
//! exactly and measures the resulting error stagnation by Monte Carlo.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::designer::{ASchedule, BRule, CRule, DesignPolicy, ItemBank};
use crate::estimator::{self, EstimatingMode, EstimatorError, Response, Transcript};
use crate::irt::{Item, ItemError};
use crate::simulator::{self, SimulatorError};

/// Margin the initial estimate must sit below `theta_true` by: `1 + pi^2/6`.
pub const PRECONDITION_GAP: f64 = 1.0 + PI * PI / 6.0;

/// Errors from the divergence construction.
#[derive(Debug, Clone, PartialEq)]
pub enum CounterexampleError {
    /// `theta0` does not satisfy `theta0 < theta_true - 1 - pi^2/6`.
    PreconditionViolated { theta0: f64, limit: f64 },
    /// The first post-flip estimate exceeded the initial estimate.
    InitialDropViolated { theta_hat: f64, theta0: f64 },
    /// An estimate exceeded the running `theta0 + sum 1/j^2` ceiling.
    BoundViolated { k: usize, theta_hat: f64, bound: f64 },
    /// An estimate failed to stay below `theta_true - 1`.
    NotBelowThreshold { k: usize, theta_hat: f64 },
    /// Post-flip estimates must be nondecreasing; a drop means a solver bug.
    MonotonicityViolated { k: usize },
    Estimator(EstimatorError),
    Item(ItemError),
}

impl fmt::Display for CounterexampleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PreconditionViolated { theta0, limit } => {
                write!(f, "theta0 = {theta0} must lie below theta_true - 1 - pi^2/6 = {limit}")
            }
            Self::InitialDropViolated { theta_hat, theta0 } => {
                write!(f, "first post-flip estimate {theta_hat} exceeds theta0 = {theta0}")
            }
            Self::BoundViolated { k, theta_hat, bound } => {
                write!(f, "step {k}: estimate {theta_hat} exceeds ceiling {bound}")
            }
            Self::NotBelowThreshold { k, theta_hat } => {
                write!(f, "step {k}: estimate {theta_hat} is not below theta_true - 1")
            }
            Self::MonotonicityViolated { k } => {
                write!(f, "step {k}: post-flip estimate decreased (solver bug)")
            }
            Self::Estimator(e) => write!(f, "estimator failure: {e}"),
            Self::Item(e) => write!(f, "item construction failure: {e}"),
        }
    }
}

impl std::error::Error for CounterexampleError {}

impl From<EstimatorError> for CounterexampleError {
    fn from(e: EstimatorError) -> Self {
        Self::Estimator(e)
    }
}

impl From<ItemError> for CounterexampleError {
    fn from(e: ItemError) -> Self {
        Self::Item(e)
    }
}

/// Parameters of one divergence run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceScenario {
    pub theta_true: f64,
    /// Initial estimate; must lie below `theta_true - 1 - pi^2/6`.
    pub theta0: f64,
    /// Ladder step size.
    pub eps0: f64,
    /// Flip step: responses are incorrect through `n0`, correct afterwards.
    pub n0: usize,
    pub horizon: usize,
}

impl DivergenceScenario {
    /// Validates the precondition and derives `n0` from `eps0`.
    pub fn new(
        theta_true: f64,
        theta0: f64,
        eps0: f64,
        horizon: usize,
    ) -> Result<Self, CounterexampleError> {
        let limit = theta_true - PRECONDITION_GAP;
        if theta0.is_nan() || theta0 >= limit {
            return Err(CounterexampleError::PreconditionViolated { theta0, limit });
        }
        let n0 = find_n0(eps0);
        Ok(Self {
            theta_true,
            theta0,
            eps0,
            n0,
            horizon: horizon.max(n0 + 1),
        })
    }
}

impl Default for DivergenceScenario {
    /// `theta_true = 0`, `theta0 = -2.7` (just inside the precondition),
    /// unit ladder step, horizon 200.
    fn default() -> Self {
        Self::new(0.0, -2.7, 1.0, 200).unwrap()
    }
}

/// One step of the forced trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep {
    pub k: usize,
    /// `k^3`.
    pub a: f64,
    pub b: f64,
    /// Forced response.
    pub y: bool,
    pub theta_hat: f64,
    /// Running ceiling `theta0 + sum_{j=n0+1}^{k} 1/j^2`.
    pub bound_a13: f64,
    pub bound_ok: bool,
    pub below_theta_minus_1: bool,
    /// Log probability of this forced response under `theta_true`.
    pub log_prob_term: f64,
}

/// Complete forced trajectory with all certificates checked.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceTrace {
    pub scenario: DivergenceScenario,
    pub steps: Vec<TraceStep>,
}

/// `ln(1 + e^x)` without overflow.
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Term `k^3 / (1 + e^k)` of the tail condition, computed stably.
fn tail_term(k: u64) -> f64 {
    let kf = k as f64;
    let e = (-kf).exp();
    kf * kf * kf * e / (1.0 + e)
}

/// Tail sum `sum_{k=n0+1}^inf k^3/(1+e^k)`, overestimated by a certified
/// geometric remainder below 1e-15.
fn tail_sum_upper(n0: u64) -> f64 {
    let mut total = 0.0;
    let mut k = n0 + 1;
    loop {
        total += tail_term(k);
        // remainder after k: terms are below j^3 e^{-j}, whose ratio is at
        // most ((k+2)/(k+1))^3 / e < 1 from j = k+1 on
        let next = k + 1;
        let head = (next as f64).powi(3) * (-(next as f64)).exp();
        let ratio = ((next as f64 + 1.0) / next as f64).powi(3) / std::f64::consts::E;
        let remainder = head / (1.0 - ratio);
        if remainder < 1e-15 {
            return total + remainder;
        }
        k = next;
    }
}

/// Whether `n0` satisfies all three divergence conditions for the given
/// ladder step.
pub fn conditions_hold(n0: usize, eps0: f64) -> bool {
    let n = n0 as u64;
    // sum of the first n0 cubes must dominate 3 (n0+1)^3
    let cube_next = 3u128 * (n as u128 + 1).pow(3);
    let cube_sum = {
        let s = n as u128 * (n as u128 + 1) / 2;
        s * s
    };
    if cube_next >= cube_sum {
        return false;
    }
    // single-term smallness: (n0+1)^3 / (1 + e^{(n0+1)^3 eps0}) < 1/6
    let np1 = (n + 1) as f64;
    if 3.0 * np1.ln() - softplus(np1.powi(3) * eps0) >= -(6f64.ln()) {
        return false;
    }
    // tail smallness: sum_{k > n0} k^3/(1+e^k) < 1/3
    tail_sum_upper(n) < 1.0 / 3.0
}

/// Smallest flip step satisfying the three divergence conditions.
pub fn find_n0(eps0: f64) -> usize {
    assert!(eps0 > 0.0, "ladder step must be positive");
    (1..).find(|&n0| conditions_hold(n0, eps0)).unwrap()
}

/// Replays the forced response pattern and verifies every per-step bound.
///
/// Any violated bound is a hard error naming the offending step; a clean
/// pass certifies that the estimate stays below `theta_true - 1` through
/// the horizon.
pub fn divergent_trajectory(
    scenario: &DivergenceScenario,
) -> Result<DivergenceTrace, CounterexampleError> {
    let n0 = scenario.n0;
    let mut transcript = Transcript::new();
    let mut steps = Vec::with_capacity(scenario.horizon);
    let mut theta_prev = scenario.theta0;
    let mut bound_sum = 0.0;

    for k in 1..=scenario.horizon {
        let kf = k as f64;
        let a = kf * kf * kf;
        let b = theta_prev; // b_k = theta_hat_{k-1}
        let y = k > n0;
        transcript.push(Response::new(Item::new(a, b, 0.0)?, y));

        let theta_hat = if k <= n0 {
            theta_prev - scenario.eps0
        } else {
            let est = estimator::solve_ability(
                &transcript,
                EstimatingMode::TwoPlScore,
                k,
                estimator::DEFAULT_TOL,
            )?;
            transcript.record_estimate(est);
            est.value
        };

        if k == n0 + 1 && theta_hat > scenario.theta0 {
            return Err(CounterexampleError::InitialDropViolated {
                theta_hat,
                theta0: scenario.theta0,
            });
        }
        if k > n0 + 1 && theta_hat < theta_prev - 1e-9 {
            return Err(CounterexampleError::MonotonicityViolated { k });
        }
        if k > n0 {
            bound_sum += 1.0 / (kf * kf);
        }
        let bound_a13 = scenario.theta0 + bound_sum;
        let bound_ok = theta_hat <= bound_a13 + 1e-9;
        if !bound_ok {
            return Err(CounterexampleError::BoundViolated {
                k,
                theta_hat,
                bound: bound_a13,
            });
        }
        let below = theta_hat < scenario.theta_true - 1.0;
        if !below {
            return Err(CounterexampleError::NotBelowThreshold { k, theta_hat });
        }

        let t = a * (scenario.theta_true - b);
        let log_prob_term = if y { -softplus(-t) } else { -softplus(t) };
        steps.push(TraceStep {
            k,
            a,
            b,
            y,
            theta_hat,
            bound_a13,
            bound_ok,
            below_theta_minus_1: below,
            log_prob_term,
        });
        theta_prev = theta_hat;
    }

    Ok(DivergenceTrace {
        scenario: *scenario,
        steps,
    })
}

/// Log probability of the forced response pattern under ability
/// `theta_true`; finite (if astronomically negative), which certifies the
/// pattern has positive probability.
pub fn log_prob_event_a(trace: &DivergenceTrace, theta_true: f64) -> f64 {
    trace
        .steps
        .iter()
        .map(|s| {
            let t = s.a * (theta_true - s.b);
            if s.y {
                -softplus(-t)
            } else {
                -softplus(t)
            }
        })
        .sum()
}

/// Outcome of the bounded-information demonstration.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedInfoReport {
    pub n: usize,
    pub replications: usize,
    pub early_checkpoint: usize,
    /// Information ceiling `pi^2 / 24` for the infinite test.
    pub info_cap: f64,
    /// Exact finite-test ceiling `(1/4) sum_{j<=n} 1/j^2`.
    pub partial_info_bound: f64,
    /// Largest observed information at `theta_true` across replications.
    pub max_observed_info: f64,
    pub median_abs_err_early: f64,
    pub median_abs_err_final: f64,
}

impl BoundedInfoReport {
    /// Final-to-early ratio of median absolute errors; near or above 1 when
    /// the extra items buy nothing.
    pub fn stagnation_ratio(&self) -> f64 {
        self.median_abs_err_final / self.median_abs_err_early
    }

    /// The deterministic information cap held for every replication.
    pub fn info_bounded(&self) -> bool {
        self.max_observed_info <= self.partial_info_bound && self.partial_info_bound < self.info_cap
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Runs sequential sessions with `a_j = 1/j` and reports the information
/// cap together with the Monte Carlo error stagnation between `n/10` and
/// `n` items. Everything is derived from `(seed, n, replications)`.
pub fn bounded_info_demo(
    n: usize,
    replications: usize,
    seed: u64,
) -> Result<BoundedInfoReport, SimulatorError> {
    assert!(n >= 10, "demonstration needs at least 10 items");
    assert!(replications >= 1);
    let theta_true = 0.0;
    let schedule: Vec<f64> = (1..=n).map(|j| 1.0 / j as f64).collect();
    // bounds widened to admit the decaying schedule: this is the point of
    // the demonstration
    let policy = DesignPolicy {
        b1: 0.0,
        eps0: 1.0,
        a_schedule: ASchedule::Explicit(schedule),
        a_bounds: (0.5 / n as f64, 1.0),
        c_rule: CRule::Zero,
        delta0: 0.5,
        b_rule: BRule::PlainTheta,
    };
    let early = n / 10;

    let per_rep: Vec<(f64, f64, f64)> = simulator::with_worker_pool(|| {
        (0..replications)
            .into_par_iter()
            .map(|rep| {
                let mut rng = simulator::replication_rng(seed, rep);
                let transcript = simulator::run_session(
                    theta_true,
                    EstimatingMode::TwoPlScore,
                    &policy,
                    &ItemBank::Idealized,
                    n,
                    estimator::DEFAULT_TOL,
                    &mut rng,
                )
                .map_err(|message| SimulatorError::Replication { rep, message })?;
                let at = |step: usize| {
                    transcript.steps()[step - 1]
                        .estimate_after
                        .map(|e| e.value)
                        .unwrap_or(f64::NAN)
                };
                let info = estimator::observed_info(theta_true, &transcript);
                Ok(((at(early) - theta_true).abs(), (at(n) - theta_true).abs(), info))
            })
            .collect::<Result<Vec<_>, SimulatorError>>()
    })?;

    let partial_info_bound = 0.25 * (1..=n).map(|j| 1.0 / (j as f64 * j as f64)).sum::<f64>();
    Ok(BoundedInfoReport {
        n,
        replications,
        early_checkpoint: early,
        info_cap: PI * PI / 24.0,
        partial_info_bound,
        max_observed_info: per_rep.iter().map(|r| r.2).fold(0.0, f64::max),
        median_abs_err_early: median(per_rep.iter().map(|r| r.0).collect()),
        median_abs_err_final: median(per_rep.iter().map(|r| r.1).collect()),
    })
}

//! Sequential item selection.
//!
//! A session has two regimes. Before the first response flip the difficulty
//! ladder applies: item `k+1` gets difficulty `b1 + s * eps0 * k`, stepping
//! up after an initial correct answer and down after an initial incorrect
//! one. From the flip onward the design is adaptive: difficulty follows the
//! current ability estimate (either directly, or offset to the
//! information-optimal point when guessing is present), while discrimination
//! and guessing follow preconfigured schedules confined to `[m, M]` and
//! `[0, 1 - delta0]`. Against a finite bank, selection instead maximizes
//! Fisher information at the target ability over the unused items.

use std::fmt;

use crate::estimator::Transcript;
use crate::irt::{self, Item, ItemError};

/// Errors from item selection.
#[derive(Debug, Clone, PartialEq)]
pub enum DesignError {
    /// Finite bank has no unused items left.
    BankExhausted,
    /// An explicit schedule is shorter than the requested step.
    ScheduleExhausted { k: usize, len: usize },
    /// Adaptive selection requires an ability estimate.
    MissingEstimate,
    /// A schedule produced parameters no valid item can carry.
    InvalidItem(ItemError),
}

impl fmt::Display for DesignError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BankExhausted => write!(f, "item bank exhausted"),
            Self::ScheduleExhausted { k, len } => {
                write!(f, "explicit schedule of length {len} has no entry for step {k}")
            }
            Self::MissingEstimate => write!(f, "adaptive selection requires an ability estimate"),
            Self::InvalidItem(e) => write!(f, "schedule produced an invalid item: {e}"),
        }
    }
}

impl std::error::Error for DesignError {}

impl From<ItemError> for DesignError {
    fn from(e: ItemError) -> Self {
        Self::InvalidItem(e)
    }
}

/// Discrimination as a function of the step index `k` (1-based) and the
/// total test length.
#[derive(Debug, Clone, PartialEq)]
pub enum ASchedule {
    Constant(f64),
    /// Linear from `lo` at `k = 1` to `hi` at `k = n`.
    LinearAscending { lo: f64, hi: f64 },
    /// Linear from `hi` at `k = 1` down to `lo` at `k = n`.
    LinearDescending { hi: f64, lo: f64 },
    /// Piecewise-constant blocks over an ascending list of levels.
    Stratified { levels: Vec<f64>, block_length: usize },
    Explicit(Vec<f64>),
    /// `a_k = k^3`: deliberately violates the boundedness requirement and
    /// exists to demonstrate what goes wrong without it.
    CubicDivergent,
}

/// Guessing floor as a function of the step index.
#[derive(Debug, Clone, PartialEq)]
pub enum CRule {
    Zero,
    Constant(f64),
    Explicit(Vec<f64>),
}

/// How adaptive difficulty tracks the current estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BRule {
    /// `b_{k+1} = theta_hat_k`.
    PlainTheta,
    /// `b_{k+1} = optimal_difficulty(theta_hat_k, a, c)`; identical to
    /// `PlainTheta` when `c = 0`.
    InfoOptimalOffset,
}

/// All selection choices left to the test designer.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignPolicy {
    /// Difficulty of the first item.
    pub b1: f64,
    /// Ladder step size (> 0).
    pub eps0: f64,
    pub a_schedule: ASchedule,
    /// Bounds `(m, M)` every scheduled discrimination must respect.
    pub a_bounds: (f64, f64),
    pub c_rule: CRule,
    /// Guessing ceiling margin: scheduled `c` must stay <= `1 - delta0`.
    pub delta0: f64,
    pub b_rule: BRule,
}

impl Default for DesignPolicy {
    fn default() -> Self {
        Self {
            b1: 0.0,
            eps0: 1.0,
            a_schedule: ASchedule::Constant(1.0),
            a_bounds: (0.5, 2.0),
            c_rule: CRule::Zero,
            delta0: 0.5,
            b_rule: BRule::PlainTheta,
        }
    }
}

/// Result of [`validate_policy`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PolicyCheck {
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl PolicyCheck {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The pool items are drawn from: an idealized continuum (any parameters the
/// schedules ask for) or a finite list consumed without replacement.
#[derive(Debug, Clone, PartialEq)]
pub enum ItemBank {
    Idealized,
    Finite { items: Vec<Item>, used: Vec<bool> },
}

impl ItemBank {
    pub fn finite(items: Vec<Item>) -> Self {
        let used = vec![false; items.len()];
        Self::Finite { items, used }
    }

    pub fn size(&self) -> Option<usize> {
        match self {
            Self::Idealized => None,
            Self::Finite { items, .. } => Some(items.len()),
        }
    }
}

/// Session phase: ladder initialization until the first flip, adaptive
/// afterwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Initializing,
    Adaptive,
}

/// Per-session mutable state: the transcript plus the planned test length.
#[derive(Debug, Clone)]
pub struct SessionState {
    pub transcript: Transcript,
    pub n_total: usize,
}

impl SessionState {
    pub fn new(n_total: usize) -> Self {
        Self {
            transcript: Transcript::new(),
            n_total,
        }
    }

    /// Number of items administered so far.
    pub fn step_index(&self) -> usize {
        self.transcript.len()
    }

    pub fn phase(&self) -> Phase {
        if self.transcript.k0().is_some() {
            Phase::Adaptive
        } else {
            Phase::Initializing
        }
    }

    /// Ladder difficulty for the next item while initializing.
    fn ladder_target(&self, policy: &DesignPolicy) -> f64 {
        let k = self.step_index();
        match self.transcript.steps().first() {
            None => policy.b1,
            Some(first) => {
                let sign = if first.response.correct { 1.0 } else { -1.0 };
                policy.b1 + sign * policy.eps0 * k as f64
            }
        }
    }
}

/// Scheduled discrimination for step `k` (1-based) of an `n_total`-item
/// test.
pub fn a_at(schedule: &ASchedule, k: usize, n_total: usize) -> Result<f64, DesignError> {
    debug_assert!(k >= 1);
    Ok(match schedule {
        ASchedule::Constant(a) => *a,
        ASchedule::LinearAscending { lo, hi } => {
            lo + (hi - lo) * linear_fraction(k, n_total)
        }
        ASchedule::LinearDescending { hi, lo } => {
            hi - (hi - lo) * linear_fraction(k, n_total)
        }
        ASchedule::Stratified { levels, block_length } => {
            let block = k.div_ceil(*block_length);
            levels[(block - 1).min(levels.len() - 1)]
        }
        ASchedule::Explicit(seq) => *seq.get(k - 1).ok_or(DesignError::ScheduleExhausted {
            k,
            len: seq.len(),
        })?,
        ASchedule::CubicDivergent => {
            let kf = k as f64;
            kf * kf * kf
        }
    })
}

fn linear_fraction(k: usize, n_total: usize) -> f64 {
    if n_total <= 1 {
        0.0
    } else {
        ((k - 1) as f64 / (n_total - 1) as f64).clamp(0.0, 1.0)
    }
}

/// Scheduled guessing floor for step `k` (1-based).
pub fn c_at(rule: &CRule, k: usize) -> Result<f64, DesignError> {
    debug_assert!(k >= 1);
    Ok(match rule {
        CRule::Zero => 0.0,
        CRule::Constant(c) => *c,
        CRule::Explicit(seq) => *seq.get(k - 1).ok_or(DesignError::ScheduleExhausted {
            k,
            len: seq.len(),
        })?,
    })
}

/// Checks every designer-facing invariant and reports all violations.
///
/// `CubicDivergent` is reported as a warning, not a violation: it is a
/// deliberate counterexample mode that bypasses the bounds by design.
pub fn validate_policy(policy: &DesignPolicy) -> PolicyCheck {
    let mut check = PolicyCheck::default();
    let (m, cap) = policy.a_bounds;

    if policy.eps0 <= 0.0 || !policy.eps0.is_finite() {
        check.violations.push(format!("eps0 = {} must be > 0", policy.eps0));
    }
    if !(m > 0.0 && m <= cap && cap.is_finite()) {
        check
            .violations
            .push(format!("a bounds (m, M) = ({m}, {cap}) must satisfy 0 < m <= M < inf"));
    }
    if !(policy.delta0 > 0.0 && policy.delta0 <= 1.0) {
        check
            .violations
            .push(format!("delta0 = {} must lie in (0, 1]", policy.delta0));
    }

    fn check_a(violations: &mut Vec<String>, m: f64, cap: f64, label: &str, a: f64) {
        if a < m {
            violations.push(format!("{label}: a = {a} falls below m = {m}"));
        } else if a > cap {
            violations.push(format!("{label}: a = {a} exceeds M = {cap}"));
        }
    }
    match &policy.a_schedule {
        ASchedule::Constant(a) => check_a(&mut check.violations, m, cap, "constant schedule", *a),
        ASchedule::LinearAscending { lo, hi } | ASchedule::LinearDescending { hi, lo } => {
            check_a(&mut check.violations, m, cap, "linear schedule low endpoint", *lo);
            check_a(&mut check.violations, m, cap, "linear schedule high endpoint", *hi);
        }
        ASchedule::Stratified { levels, block_length } => {
            for (i, level) in levels.iter().enumerate() {
                check_a(&mut check.violations, m, cap, &format!("stratified level {i}"), *level);
            }
            if levels.is_empty() {
                check.violations.push("stratified schedule has no levels".into());
            }
            if levels.windows(2).any(|w| w[0] > w[1]) {
                check.violations.push("stratified levels must be ascending".into());
            }
            if *block_length == 0 {
                check.violations.push("stratified block length must be >= 1".into());
            }
        }
        ASchedule::Explicit(seq) => {
            if seq.is_empty() {
                check.violations.push("explicit a schedule is empty".into());
            }
            for (i, a) in seq.iter().enumerate() {
                check_a(&mut check.violations, m, cap, &format!("explicit a[{i}]"), *a);
            }
        }
        ASchedule::CubicDivergent => {
            check
                .warnings
                .push("a_k = k^3 is a theory-violating counterexample mode; bounds do not apply".into());
        }
    }

    let ceiling = 1.0 - policy.delta0;
    fn check_c(violations: &mut Vec<String>, ceiling: f64, label: &str, c: f64) {
        if !(0.0..1.0).contains(&c) {
            violations.push(format!("{label}: c = {c} must lie in [0, 1)"));
        } else if c > ceiling {
            violations.push(format!("{label}: c = {c} exceeds ceiling 1 - delta0 = {ceiling}"));
        }
    }
    match &policy.c_rule {
        CRule::Zero => {}
        CRule::Constant(c) => check_c(&mut check.violations, ceiling, "constant c rule", *c),
        CRule::Explicit(seq) => {
            if seq.is_empty() {
                check.violations.push("explicit c schedule is empty".into());
            }
            for (i, c) in seq.iter().enumerate() {
                check_c(&mut check.violations, ceiling, &format!("explicit c[{i}]"), *c);
            }
        }
    }

    check
}

/// Selects the next item.
///
/// Idealized bank: the scheduled `(a, c)` with difficulty from the ladder
/// (initializing) or from the estimate via the policy's difficulty rule
/// (adaptive). Finite bank: the unused item maximizing Fisher information
/// at the target ability, ties broken by lowest index, marked used.
pub fn next_item(
    state: &SessionState,
    policy: &DesignPolicy,
    bank: &mut ItemBank,
) -> Result<Item, DesignError> {
    let k_next = state.step_index() + 1;
    let target = match state.phase() {
        Phase::Initializing => state.ladder_target(policy),
        Phase::Adaptive => {
            state
                .transcript
                .last_estimate()
                .ok_or(DesignError::MissingEstimate)?
                .value
        }
    };
    match bank {
        ItemBank::Idealized => {
            let a = a_at(&policy.a_schedule, k_next, state.n_total)?;
            let c = c_at(&policy.c_rule, k_next)?;
            let b = match (state.phase(), policy.b_rule) {
                (Phase::Initializing, _) | (_, BRule::PlainTheta) => target,
                (Phase::Adaptive, BRule::InfoOptimalOffset) => {
                    irt::optimal_difficulty(target, a, c)
                }
            };
            Ok(Item::new(a, b, c)?)
        }
        ItemBank::Finite { items, used } => {
            let mut best: Option<(usize, f64)> = None;
            for (i, item) in items.iter().enumerate() {
                if used[i] {
                    continue;
                }
                let info = irt::fisher_info(target, item);
                let better = match best {
                    None => true,
                    Some((_, best_info)) => info > best_info,
                };
                if better {
                    best = Some((i, info));
                }
            }
            let (index, _) = best.ok_or(DesignError::BankExhausted)?;
            used[index] = true;
            Ok(items[index])
        }
    }
}

//! Ability estimation from a transcript of scored responses.
//!
//! For the Rasch and two-parameter models the maximum-likelihood estimate of
//! ability solves a strictly decreasing score equation
//!
//! ```text
//! sum_k w_k * [y_k - c_k - (1 - c_k) * G(a_k * (theta - b_k))] = 0,
//! ```
//!
//! with `w_k = 1` (Rasch) or `w_k = a_k` (2-PL). The raw three-parameter
//! likelihood equation carries ability-dependent weights
//! `a_k e^{t_k} / (c_k + e^{t_k})` and is *not* monotone — it can have
//! multiple roots, which [`find_roots_raw`] exposes as a diagnostic. The
//! modified equation replaces those weights with the ability-free
//! [`crate::irt::weight`], restoring monotonicity and a unique root whenever
//! the solvability condition `sum w_k y_k > sum w_k c_k` holds; otherwise a
//! predetermined fallback value `r_k = -ln(1 + k) - 2` is reported.
//!
//! The solver keeps a sign-change bracket at all times (seeded from the
//! previous estimate +/- 4, grown by doubling) and only accepts a root once
//! the bracket has width <= `tol`, so a reported root is always certified by
//! a sign change even though Newton steps are used inside the bracket to cut
//! down on score evaluations. Score plateaus that are exactly zero under
//! saturated logistics resolve to the plateau midpoint, deterministically.

use std::fmt;

use crate::irt::{self, Item};

/// Hard ceiling for bracket growth; beyond this the transcript is treated
/// as degenerate.
const BRACKET_LIMIT: f64 = 1e6;

/// Initial half-width of the root bracket around the previous estimate.
const BRACKET_RADIUS: f64 = 4.0;

/// Default solver tolerance (ability units).
pub const DEFAULT_TOL: f64 = 1e-10;

/// Errors from estimation.
#[derive(Debug, Clone, PartialEq)]
pub enum EstimatorError {
    /// The transcript is empty.
    EmptyTranscript,
    /// Both response outcomes are required before an estimate exists.
    IncompleteInitialization,
    /// An item violates the parameter restrictions of the requested mode.
    ModeMismatch { mode: EstimatingMode, index: usize },
    /// The raw three-parameter equation cannot be solved for an estimate.
    NonMonotoneMode,
    /// No sign change found within `|theta| <= 1e6`.
    DegenerateTranscript,
}

impl fmt::Display for EstimatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyTranscript => write!(f, "transcript is empty"),
            Self::IncompleteInitialization => {
                write!(f, "initialization incomplete: transcript lacks one of the outcomes")
            }
            Self::ModeMismatch { mode, index } => {
                write!(f, "item {index} is not admissible under {mode:?}")
            }
            Self::NonMonotoneMode => {
                write!(f, "raw three-parameter equation is not monotone; use the modified mode")
            }
            Self::DegenerateTranscript => {
                write!(f, "degenerate transcript: no sign change within |theta| <= 1e6")
            }
        }
    }
}

impl std::error::Error for EstimatorError {}

/// A scored response to one item (`true` = correct).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Response {
    pub item: Item,
    pub correct: bool,
}

impl Response {
    pub fn new(item: Item, correct: bool) -> Self {
        Self { item, correct }
    }
}

/// Where an ability estimate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateSource {
    /// Unique root of the (monotone) estimating equation.
    RootOfEquation,
    /// Predetermined fallback `r_k`, used when the solvability condition
    /// fails.
    Fallback,
}

/// An ability estimate with its observed information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbilityEstimate {
    pub value: f64,
    pub observed_info: f64,
    pub source: EstimateSource,
}

/// One administered item together with the estimate recorded after it.
#[derive(Debug, Clone, PartialEq)]
pub struct TranscriptStep {
    pub response: Response,
    /// Absent before the first response flip; present from then on.
    pub estimate_after: Option<AbilityEstimate>,
}

/// Ordered record of administered items, outcomes, and per-step estimates.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Transcript {
    steps: Vec<TranscriptStep>,
    /// 1-based index of the first response that differs from the first one.
    k0: Option<usize>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a transcript from parallel item/outcome lists (test and
    /// diagnostic convenience; no estimates recorded).
    pub fn from_pairs(items: &[Item], outcomes: &[bool]) -> Self {
        assert_eq!(items.len(), outcomes.len());
        let mut t = Self::new();
        for (item, &y) in items.iter().zip(outcomes) {
            t.push(Response::new(*item, y));
        }
        t
    }

    pub fn push(&mut self, response: Response) {
        if self.k0.is_none() && !self.steps.is_empty() && response.correct != self.steps[0].response.correct {
            self.k0 = Some(self.steps.len() + 1);
        }
        self.steps.push(TranscriptStep {
            response,
            estimate_after: None,
        });
    }

    /// Records the estimate computed after the most recent response.
    ///
    /// Estimates may only exist from the first response flip onward.
    pub fn record_estimate(&mut self, estimate: AbilityEstimate) {
        let k = self.steps.len();
        let k0 = self.k0.expect("no estimate may be recorded before the first flip");
        assert!(k >= k0);
        self.steps[k - 1].estimate_after = Some(estimate);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[TranscriptStep] {
        &self.steps
    }

    /// 1-based index of the first response flip, if one has occurred.
    pub fn k0(&self) -> Option<usize> {
        self.k0
    }

    /// Both outcomes present (equivalently, `k0` is known).
    pub fn has_both_outcomes(&self) -> bool {
        self.k0.is_some()
    }

    /// Most recent recorded estimate.
    pub fn last_estimate(&self) -> Option<&AbilityEstimate> {
        self.steps.iter().rev().find_map(|s| s.estimate_after.as_ref())
    }

    pub fn items(&self) -> impl Iterator<Item = &Item> {
        self.steps.iter().map(|s| &s.response.item)
    }

    /// Items of the first `n` steps.
    pub fn prefix_items(&self, n: usize) -> impl Iterator<Item = &Item> {
        self.steps[..n.min(self.steps.len())].iter().map(|s| &s.response.item)
    }
}

/// Which estimating equation defines the ability estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatingMode {
    /// Unweighted residuals; requires Rasch items.
    RaschScore,
    /// Residuals weighted by `a_k`; requires `c = 0` items.
    TwoPlScore,
    /// Raw likelihood weights `a e^t / (c + e^t)`; diagnostic only.
    ThreePlRaw,
    /// Ability-free weights `weight(a, c)`; monotone, unique root.
    ThreePlModified,
}

impl EstimatingMode {
    fn admits(&self, item: &Item) -> bool {
        match self {
            Self::RaschScore => item.a() == 1.0 && item.c() == 0.0,
            Self::TwoPlScore => item.c() == 0.0,
            Self::ThreePlRaw | Self::ThreePlModified => true,
        }
    }

    fn is_monotone(&self) -> bool {
        !matches!(self, Self::ThreePlRaw)
    }
}

/// Structure-of-arrays view of a transcript for fast repeated score
/// evaluation. The score of the monotone modes is
/// `margin - sum_i wc_i * G(a_i (theta - b_i))` with theta-independent
/// `margin = sum w_i (y_i - c_i)` and `wc_i = w_i (1 - c_i)`, so each
/// evaluation costs one logistic per item.
struct ScoreTerms {
    a: Vec<f64>,
    b: Vec<f64>,
    /// `w_i * (1 - c_i)`.
    wc: Vec<f64>,
    /// `a_i * w_i * (1 - c_i)` (slope factor).
    awc: Vec<f64>,
    /// `sum_i w_i * (y_i - c_i)`; also the score limit at theta -> -inf.
    margin: f64,
    // per-item data for the raw (theta-weighted) diagnostic score
    c: Vec<f64>,
    y: Vec<f64>,
}

impl ScoreTerms {
    fn build(transcript: &Transcript, mode: EstimatingMode) -> Result<Self, EstimatorError> {
        if transcript.is_empty() {
            return Err(EstimatorError::EmptyTranscript);
        }
        let n = transcript.len();
        let mut terms = ScoreTerms {
            a: Vec::with_capacity(n),
            b: Vec::with_capacity(n),
            wc: Vec::with_capacity(n),
            awc: Vec::with_capacity(n),
            margin: 0.0,
            c: Vec::with_capacity(n),
            y: Vec::with_capacity(n),
        };
        for (index, step) in transcript.steps.iter().enumerate() {
            let item = &step.response.item;
            if !mode.admits(item) {
                return Err(EstimatorError::ModeMismatch { mode, index });
            }
            let w = match mode {
                EstimatingMode::RaschScore => 1.0,
                EstimatingMode::TwoPlScore | EstimatingMode::ThreePlRaw => item.a(),
                EstimatingMode::ThreePlModified => irt::weight(item.a(), item.c()),
            };
            let y = if step.response.correct { 1.0 } else { 0.0 };
            let wc = w * (1.0 - item.c());
            terms.a.push(item.a());
            terms.b.push(item.b());
            terms.wc.push(wc);
            terms.awc.push(item.a() * wc);
            terms.margin += w * (y - item.c());
            terms.c.push(item.c());
            terms.y.push(y);
        }
        Ok(terms)
    }

    /// Monotone-mode score at `theta`.
    fn eval(&self, theta: f64) -> f64 {
        let mut acc = 0.0;
        for ((&a, &b), &wc) in self.a.iter().zip(&self.b).zip(&self.wc) {
            acc += wc * irt::logistic(a * (theta - b));
        }
        self.margin - acc
    }

    /// Monotone-mode score and its derivative in `theta` (one logistic
    /// evaluation per item serves both).
    fn eval_with_slope(&self, theta: f64) -> (f64, f64) {
        let mut acc = 0.0;
        let mut slope = 0.0;
        for ((&a, &b), (&wc, &awc)) in self
            .a
            .iter()
            .zip(&self.b)
            .zip(self.wc.iter().zip(&self.awc))
        {
            let g = irt::logistic(a * (theta - b));
            acc += wc * g;
            slope -= awc * g * (1.0 - g);
        }
        (self.margin - acc, slope)
    }

    /// Raw three-parameter score at `theta` (ability-dependent weights).
    fn eval_raw(&self, theta: f64) -> f64 {
        let mut total = 0.0;
        for i in 0..self.a.len() {
            let g = irt::logistic(self.a[i] * (theta - self.b[i]));
            let raw_w = if self.c[i] == 0.0 {
                self.a[i]
            } else {
                // a e^t / (c + e^t) rewritten in terms of g
                self.a[i] * g / (self.c[i] + (1.0 - self.c[i]) * g)
            };
            total += raw_w * (self.y[i] - self.c[i] - (1.0 - self.c[i]) * g);
        }
        total
    }

    fn weighted_outcome_margin(&self) -> f64 {
        self.margin
    }
}

/// Left-hand side of the selected estimating equation at `theta`.
pub fn score(theta: f64, transcript: &Transcript, mode: EstimatingMode) -> Result<f64, EstimatorError> {
    let terms = ScoreTerms::build(transcript, mode)?;
    Ok(match mode {
        EstimatingMode::ThreePlRaw => terms.eval_raw(theta),
        _ => terms.eval(theta),
    })
}

/// Whether the (monotone) estimating equation has a root.
///
/// Requires both outcomes to be present. Always true for the Rasch and
/// two-parameter scores; the modified three-parameter score has a root iff
/// `sum w_k y_k > sum w_k c_k` strictly.
pub fn solvable(transcript: &Transcript, mode: EstimatingMode) -> Result<bool, EstimatorError> {
    if !transcript.has_both_outcomes() {
        return Err(EstimatorError::IncompleteInitialization);
    }
    match mode {
        EstimatingMode::RaschScore | EstimatingMode::TwoPlScore => Ok(true),
        EstimatingMode::ThreePlModified => {
            let terms = ScoreTerms::build(transcript, mode)?;
            Ok(terms.weighted_outcome_margin() > 0.0)
        }
        EstimatingMode::ThreePlRaw => Err(EstimatorError::NonMonotoneMode),
    }
}

/// Predetermined fallback estimate `r_k = -ln(1 + k) - 2`, decreasing to
/// negative infinity in `k`.
pub fn fallback_value(k: usize) -> f64 {
    -((1 + k) as f64).ln() - 2.0
}

/// Solves the monotone estimating equation for the ability estimate.
///
/// When the equation is solvable the unique root is located inside a
/// sign-change bracket narrowed to width `tol` (seeded from the previous
/// recorded estimate +/- 4, or [-4, 4] when none exists, and expanded by
/// doubling until the score changes sign). When it is not solvable the
/// fallback `r(fallback_index)` is returned instead.
pub fn solve_ability(
    transcript: &Transcript,
    mode: EstimatingMode,
    fallback_index: usize,
    tol: f64,
) -> Result<AbilityEstimate, EstimatorError> {
    if !mode.is_monotone() {
        return Err(EstimatorError::NonMonotoneMode);
    }
    if !solvable(transcript, mode)? {
        let value = fallback_value(fallback_index);
        return Ok(AbilityEstimate {
            value,
            observed_info: observed_info(value, transcript),
            source: EstimateSource::Fallback,
        });
    }
    let terms = ScoreTerms::build(transcript, mode)?;
    let center = transcript.last_estimate().map_or(0.0, |e| e.value);
    let value = solve_monotone(&terms, center, tol)?;
    Ok(AbilityEstimate {
        value,
        observed_info: observed_info(value, transcript),
        source: EstimateSource::RootOfEquation,
    })
}

/// Root of a strictly decreasing score, certified by a sign-change bracket
/// of width <= `tol`.
///
/// The starting bracket `center +/- 4` almost always contains the root, so
/// it is presumed valid and its endpoints are never evaluated on the fast
/// path; an answer is only accepted once a sign change across an interval
/// of width <= `tol` has been observed directly. When the presumption turns
/// out to be wrong, the bracket is rebuilt with evaluated endpoints, grown
/// by doubling until the score changes sign.
fn solve_monotone(terms: &ScoreTerms, center: f64, tol: f64) -> Result<f64, EstimatorError> {
    let lo = center - BRACKET_RADIUS;
    let hi = center + BRACKET_RADIUS;
    if let Some(root) = newton_in_bracket(terms, lo, hi, center, tol, false) {
        return Ok(root);
    }

    // Presumption failed: grow an evaluated bracket until f(lo) > 0 > f(hi)
    // strictly. The solvability margin makes both limits nonzero, so this
    // terminates (or trips the range guard).
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = terms.eval(lo);
    while flo <= 0.0 {
        if lo <= -BRACKET_LIMIT {
            return Err(EstimatorError::DegenerateTranscript);
        }
        lo -= hi - lo;
        flo = terms.eval(lo);
    }
    let mut fhi = terms.eval(hi);
    while fhi >= 0.0 {
        if hi >= BRACKET_LIMIT {
            return Err(EstimatorError::DegenerateTranscript);
        }
        hi += hi - lo;
        fhi = terms.eval(hi);
    }
    newton_in_bracket(terms, lo, hi, center.clamp(lo, hi), tol, true)
        .ok_or(EstimatorError::DegenerateTranscript)
}

/// Guarded Newton iteration on a strictly decreasing score over `[lo, hi]`.
///
/// Maintains `root in (lo, hi)` as an invariant *assuming* the initial
/// interval brackets the root; proposals outside the interval fall back to
/// bisection steps. Exits:
/// - a directly observed sign change across a `tol`-wide interval
///   (midpoint returned; valid independent of the bracket assumption);
/// - an exactly-zero score (plateau midpoint; endpoints validated first
///   when the bracket is unverified);
/// - bracket width <= `tol` (midpoint; when the bracket is unverified the
///   enclosure is checked by evaluating the opposite endpoint first).
///
/// Returns `None` when the initial interval demonstrably does not bracket
/// the root, which can only happen with `verified = false`.
fn newton_in_bracket(
    terms: &ScoreTerms,
    mut lo: f64,
    mut hi: f64,
    start: f64,
    tol: f64,
    verified: bool,
) -> Option<f64> {
    let mut x = start;
    for _ in 0..4096 {
        let (fx, dfx) = terms.eval_with_slope(x);
        if fx == 0.0 {
            if !verified && !(terms.eval(lo) > 0.0 && terms.eval(hi) < 0.0) {
                return None;
            }
            return Some(plateau_midpoint(terms, lo, x, hi, tol));
        }
        let last_sign_positive = fx > 0.0;
        if last_sign_positive {
            lo = x;
        } else {
            hi = x;
        }

        if hi - lo <= tol {
            if verified {
                return Some(0.5 * (lo + hi));
            }
            // confirm the enclosure across the other end of the interval
            let other = if last_sign_positive { terms.eval(hi) } else { terms.eval(lo) };
            if last_sign_positive && other < 0.0 || !last_sign_positive && other > 0.0 {
                return Some(0.5 * (lo + hi));
            }
            if other == 0.0 {
                let z = if last_sign_positive { hi } else { lo };
                return Some(plateau_midpoint(terms, lo - 1.0, z, hi + 1.0, tol));
            }
            return None;
        }

        let mut next = if dfx < 0.0 && dfx.is_finite() {
            x - fx / dfx
        } else {
            0.5 * (lo + hi)
        };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }

        // Newton has stalled below tol: certify with one extra evaluation
        // on the far side of the last point.
        if (next - x).abs() <= 0.5 * tol {
            if fx > 0.0 {
                let probe = x + tol;
                let fp = terms.eval(probe);
                if fp < 0.0 {
                    return Some(x + 0.5 * tol);
                }
                if fp == 0.0 {
                    return Some(plateau_midpoint(terms, lo, probe, hi.max(probe + 1.0), tol));
                }
                lo = lo.max(probe);
            } else {
                let probe = x - tol;
                let fp = terms.eval(probe);
                if fp > 0.0 {
                    return Some(x - 0.5 * tol);
                }
                if fp == 0.0 {
                    return Some(plateau_midpoint(terms, lo.min(probe - 1.0), probe, hi, tol));
                }
                hi = hi.min(probe);
            }
            next = 0.5 * (lo + hi);
        }
        x = next;
    }
    None
}

/// Deterministic resolution of an exactly-zero score plateau: locate the
/// maximal zero interval inside `(lo, hi)` containing `z` and return its
/// midpoint. `f(lo) > 0 > f(hi)` is assumed (sentinels outside a grown
/// bracket are fine).
fn plateau_midpoint(terms: &ScoreTerms, lo: f64, z: f64, hi: f64, tol: f64) -> f64 {
    // left edge: boundary between f > 0 and f <= 0 within [lo, z]
    let (mut a, mut b) = (lo, z);
    while b - a > tol {
        let m = 0.5 * (a + b);
        if terms.eval(m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    let left = b;
    // right edge: boundary between f >= 0 and f < 0 within [z, hi]
    let (mut a, mut b) = (z, hi);
    while b - a > tol {
        let m = 0.5 * (a + b);
        if terms.eval(m) < 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    let right = a;
    0.5 * (left + right)
}

/// All roots of the raw three-parameter score found by a grid scan over
/// `range` followed by bisection refinement of each sign change; ascending.
///
/// Diagnostic companion to the modified equation: the raw equation may have
/// several roots, and this makes them visible.
pub fn find_roots_raw(
    transcript: &Transcript,
    range: (f64, f64),
    grid_points: usize,
) -> Result<Vec<f64>, EstimatorError> {
    let (lo, hi) = range;
    let proper_interval = lo < hi;
    if grid_points < 2 || !proper_interval {
        return Ok(Vec::new());
    }
    let terms = ScoreTerms::build(transcript, EstimatingMode::ThreePlRaw)?;
    let step = (hi - lo) / (grid_points - 1) as f64;
    let mut roots = Vec::new();
    let mut prev_x = lo;
    let mut prev_f = terms.eval_raw(lo);
    if prev_f == 0.0 {
        roots.push(lo);
    }
    for i in 1..grid_points {
        let x = lo + step * i as f64;
        let f = terms.eval_raw(x);
        if f == 0.0 {
            roots.push(x);
        } else if prev_f != 0.0 && prev_f.signum() != f.signum() {
            roots.push(bisect_cell(&terms, prev_x, prev_f, x, 1e-10));
        }
        prev_x = x;
        prev_f = f;
    }
    roots.sort_by(|p, q| p.partial_cmp(q).unwrap());
    roots.dedup_by(|p, q| (*p - *q).abs() < 1e-8);
    Ok(roots)
}

/// Sign-preserving bisection of one grid cell of the raw score.
fn bisect_cell(terms: &ScoreTerms, mut lo: f64, flo: f64, mut hi: f64, tol: f64) -> f64 {
    let lo_sign = flo.signum();
    while hi - lo > tol {
        let m = 0.5 * (lo + hi);
        let fm = terms.eval_raw(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == lo_sign {
            lo = m;
        } else {
            hi = m;
        }
    }
    0.5 * (lo + hi)
}

/// Observed Fisher information at `theta`: per-item information summed over
/// the whole transcript.
pub fn observed_info(theta: f64, transcript: &Transcript) -> f64 {
    observed_info_items(theta, transcript.items())
}

/// Observed Fisher information over an arbitrary item collection.
pub fn observed_info_items<'a>(theta: f64, items: impl IntoIterator<Item = &'a Item>) -> f64 {
    items.into_iter().map(|item| irt::fisher_info(theta, item)).sum()
}

/// Nonrandom normalizer for standardized errors: the sum of per-item
/// maximal information `max_info_closed_form(a_k, c_k)`.
///
/// For `c = 0` items this is `sum a_k^2 / 4`, and for Rasch items `n / 4`.
pub fn normalizer_v(transcript: &Transcript) -> f64 {
    normalizer_v_items(transcript.items())
}

/// [`normalizer_v`] over an arbitrary item collection.
pub fn normalizer_v_items<'a>(items: impl IntoIterator<Item = &'a Item>) -> f64 {
    items
        .into_iter()
        .map(|item| irt::max_info_closed_form(item.a(), item.c()))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn item(a: f64, b: f64, c: f64) -> Item {
        Item::new(a, b, c).unwrap()
    }

    fn rasch_pair() -> Transcript {
        Transcript::from_pairs(&[item(1.0, 0.0, 0.0), item(1.0, 0.0, 0.0)], &[true, false])
    }

    #[test]
    fn k0_is_first_flip() {
        let mut t = Transcript::new();
        t.push(Response::new(item(1.0, 0.0, 0.0), true));
        assert_eq!(t.k0(), None);
        t.push(Response::new(item(1.0, 1.0, 0.0), true));
        assert_eq!(t.k0(), None);
        t.push(Response::new(item(1.0, 2.0, 0.0), false));
        assert_eq!(t.k0(), Some(3));
    }

    #[test]
    fn score_symmetric_residuals_cancel() {
        assert_eq!(score(0.0, &rasch_pair(), EstimatingMode::RaschScore).unwrap(), 0.0);
    }

    #[test]
    fn score_rejects_mode_mismatch() {
        let t = Transcript::from_pairs(&[item(2.0, 0.0, 0.0)], &[true]);
        assert!(matches!(
            score(0.0, &t, EstimatingMode::RaschScore),
            Err(EstimatorError::ModeMismatch { index: 0, .. })
        ));
        let t3 = Transcript::from_pairs(&[item(2.0, 0.0, 0.2)], &[true]);
        assert!(matches!(
            score(0.0, &t3, EstimatingMode::TwoPlScore),
            Err(EstimatorError::ModeMismatch { .. })
        ));
    }

    #[test]
    fn score_empty_transcript_rejected() {
        let t = Transcript::new();
        assert!(matches!(
            score(0.0, &t, EstimatingMode::RaschScore),
            Err(EstimatorError::EmptyTranscript)
        ));
    }

    #[test]
    fn modified_reduces_to_two_pl_without_guessing() {
        let items = [
            item(0.7, -1.0, 0.0),
            item(1.4, 0.3, 0.0),
            item(2.0, 1.1, 0.0),
        ];
        let t = Transcript::from_pairs(&items, &[true, false, true]);
        for i in -10..=10 {
            let theta = i as f64 * 0.7;
            let two = score(theta, &t, EstimatingMode::TwoPlScore).unwrap();
            let modified = score(theta, &t, EstimatingMode::ThreePlModified).unwrap();
            assert_eq!(two, modified);
        }
    }

    #[test]
    fn solvable_examples() {
        // c = 0 with a correct answer present: always solvable
        assert!(solvable(&rasch_pair(), EstimatingMode::RaschScore).unwrap());
        assert!(solvable(&rasch_pair(), EstimatingMode::ThreePlModified).unwrap());

        // equal weights, all c = 0.25, one correct of four: margin is zero
        let quarter = item(1.0, 0.0, 0.25);
        let t = Transcript::from_pairs(&[quarter; 4], &[true, false, false, false]);
        assert!(!solvable(&t, EstimatingMode::ThreePlModified).unwrap());

        let t = Transcript::from_pairs(&[quarter; 3], &[true, true, false]);
        assert!(solvable(&t, EstimatingMode::ThreePlModified).unwrap());
    }

    #[test]
    fn solvable_requires_both_outcomes() {
        let t = Transcript::from_pairs(&[item(1.0, 0.0, 0.0); 3], &[true, true, true]);
        assert!(matches!(
            solvable(&t, EstimatingMode::RaschScore),
            Err(EstimatorError::IncompleteInitialization)
        ));
    }

    #[test]
    fn solve_symmetric_pair_gives_zero() {
        let est = solve_ability(&rasch_pair(), EstimatingMode::RaschScore, 2, DEFAULT_TOL).unwrap();
        assert!(est.value.abs() <= DEFAULT_TOL);
        assert_eq!(est.source, EstimateSource::RootOfEquation);
    }

    #[test]
    fn solve_two_pl_known_root() {
        let t = Transcript::from_pairs(&[item(1.0, 0.0, 0.0), item(2.0, 0.0, 0.0)], &[true, false]);
        let est = solve_ability(&t, EstimatingMode::TwoPlScore, 2, DEFAULT_TOL).unwrap();
        assert_relative_eq!(est.value, -0.4196176249910979, epsilon = 1e-9);
    }

    #[test]
    fn solve_unsolvable_returns_fallback() {
        let quarter = item(1.0, 0.0, 0.25);
        let t = Transcript::from_pairs(&[quarter; 4], &[true, false, false, false]);
        let est = solve_ability(&t, EstimatingMode::ThreePlModified, 4, DEFAULT_TOL).unwrap();
        assert_eq!(est.source, EstimateSource::Fallback);
        assert_relative_eq!(est.value, -(5f64.ln()) - 2.0, epsilon = 1e-14);
    }

    #[test]
    fn solve_rejects_raw_mode() {
        assert!(matches!(
            solve_ability(&rasch_pair(), EstimatingMode::ThreePlRaw, 2, DEFAULT_TOL),
            Err(EstimatorError::NonMonotoneMode)
        ));
    }

    #[test]
    fn solve_residual_is_small() {
        let items = [
            item(0.6, -1.2, 0.0),
            item(1.1, 0.4, 0.0),
            item(1.9, 0.9, 0.0),
            item(0.8, 2.0, 0.0),
        ];
        let t = Transcript::from_pairs(&items, &[false, true, false, true]);
        let est = solve_ability(&t, EstimatingMode::TwoPlScore, 4, DEFAULT_TOL).unwrap();
        let resid = score(est.value, &t, EstimatingMode::TwoPlScore).unwrap();
        let w_sum: f64 = items.iter().map(|i| i.a()).sum();
        assert!(resid.abs() <= DEFAULT_TOL * w_sum);
    }

    #[test]
    fn fallback_sequence_decreases_to_minus_infinity() {
        let mut prev = f64::INFINITY;
        for k in 1..200 {
            let r = fallback_value(k);
            assert!(r < prev);
            prev = r;
        }
        assert!(fallback_value(100_000) < -13.0);
    }

    #[test]
    fn raw_roots_single_for_exponential_family() {
        let items = [item(0.8, -0.5, 0.0), item(1.6, 0.7, 0.0), item(1.0, 0.1, 0.0)];
        let t = Transcript::from_pairs(&items, &[true, false, true]);
        let roots = find_roots_raw(&t, (-10.0, 10.0), 2001).unwrap();
        assert_eq!(roots.len(), 1);
        let est = solve_ability(&t, EstimatingMode::TwoPlScore, 3, DEFAULT_TOL).unwrap();
        assert!((roots[0] - est.value).abs() < 1e-8);
    }

    #[test]
    fn raw_roots_empty_interval() {
        let t = rasch_pair();
        assert!(find_roots_raw(&t, (1.0, 1.0), 100).unwrap().is_empty());
        assert!(find_roots_raw(&t, (-1.0, 1.0), 1).unwrap().is_empty());
    }

    #[test]
    fn observed_info_at_matched_difficulty() {
        let t = Transcript::from_pairs(&[item(1.0, 0.4, 0.0); 6], &[true; 6]);
        assert_eq!(observed_info(0.4, &t), 6.0 * 0.25);
    }

    #[test]
    fn observed_info_empty_is_zero() {
        assert_eq!(observed_info(0.0, &Transcript::new()), 0.0);
    }

    #[test]
    fn observed_info_single_item_at_optimal_b() {
        let (a, c) = (1.0, 0.125);
        let b = irt::optimal_difficulty(0.0, a, c);
        let t = Transcript::from_pairs(&[item(a, b, c)], &[true]);
        assert_relative_eq!(
            observed_info(0.0, &t),
            irt::max_info_closed_form(a, c),
            max_relative = 1e-12
        );
    }

    #[test]
    fn normalizer_values() {
        let rasch = Transcript::from_pairs(&[item(1.0, 0.3, 0.0); 8], &[true; 8]);
        assert_eq!(normalizer_v(&rasch), 2.0);

        let two = Transcript::from_pairs(
            &[item(1.0, 0.0, 0.0), item(2.0, 0.0, 0.0), item(3.0, 0.0, 0.0)],
            &[true, false, true],
        );
        assert_eq!(normalizer_v(&two), 3.5);
    }

    #[test]
    fn score_limits_at_extreme_ability() {
        let items = [item(1.0, 0.2, 0.1), item(0.5, -1.0, 0.3), item(2.0, 1.0, 0.0)];
        let ys = [true, false, true];
        let t = Transcript::from_pairs(&items, &ys);
        let w: Vec<f64> = items.iter().map(|i| irt::weight(i.a(), i.c())).collect();
        let low_limit: f64 = items
            .iter()
            .zip(&ys)
            .zip(&w)
            .map(|((i, &y), wk)| wk * (if y { 1.0 } else { 0.0 } - i.c()))
            .sum();
        let high_limit: f64 = ys
            .iter()
            .zip(&w)
            .map(|(&y, wk)| wk * (if y { 1.0 } else { 0.0 } - 1.0))
            .sum();
        let s_low = score(-500.0, &t, EstimatingMode::ThreePlModified).unwrap();
        let s_high = score(500.0, &t, EstimatingMode::ThreePlModified).unwrap();
        assert_relative_eq!(s_low, low_limit, epsilon = 1e-9);
        assert_relative_eq!(s_high, high_limit, epsilon = 1e-9);
    }
}

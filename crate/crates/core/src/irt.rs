//! Logistic item response theory primitives.
//!
//! An item is described by a discrimination `a > 0`, a difficulty `b`, and a
//! guessing floor `c in [0, 1)`. The probability that an examinee with
//! ability `theta` answers the item correctly (the item characteristic
//! curve) is
//!
//! ```text
//! P(theta) = c + (1 - c) * G(a * (theta - b)),    G(t) = e^t / (1 + e^t).
//! ```
//!
//! The Rasch model is the special case `a = 1, c = 0`; the two-parameter
//! model is `c = 0`. The per-item Fisher information about `theta` is
//! `P'(theta)^2 / (P(theta) * (1 - P(theta)))`, which reduces to
//!
//! ```text
//! I(theta) = (1 - c) * a^2 * g^2 * (1 - g) / (c + (1 - c) * g),
//! ```
//!
//! with `g = G(a * (theta - b))`. For a fixed `(a, c)` the information is
//! maximized over `b` at `b = theta - ln((1 + sqrt(1 + 8c)) / 2) / a`, and
//! the maximized value has the closed form implemented by
//! [`max_info_closed_form`]. Everything in this module is a pure function;
//! parameter validity is checked once at [`Item`] construction so the hot
//! evaluation paths stay branch-free on validity.

use std::fmt;

/// Standard logistic function `G(t) = e^t / (1 + e^t)`.
///
/// Computed on the non-overflowing branch for either sign of `t`: a positive
/// argument is never exponentiated. Saturates to exactly 0 or 1 once the
/// true value is within half an ulp of the endpoint (|t| around 37 on the
/// high side, 745 on the low side).
#[inline]
pub fn logistic(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// Invalid item parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum ItemError {
    /// Discrimination must be finite and strictly positive.
    BadDiscrimination(f64),
    /// Difficulty must be finite.
    BadDifficulty(f64),
    /// Guessing probability must lie in `[0, 1)`.
    BadGuessing(f64),
}

impl fmt::Display for ItemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BadDiscrimination(a) => {
                write!(f, "discrimination a = {a} must be finite and > 0")
            }
            Self::BadDifficulty(b) => write!(f, "difficulty b = {b} must be finite"),
            Self::BadGuessing(c) => write!(f, "guessing c = {c} must lie in [0, 1)"),
        }
    }
}

impl std::error::Error for ItemError {}

/// One test item: discrimination `a`, difficulty `b`, guessing floor `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Item {
    a: f64,
    b: f64,
    c: f64,
}

impl Item {
    /// Validates `a > 0` (finite), `b` finite, `0 <= c < 1`.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, ItemError> {
        if !a.is_finite() || a <= 0.0 {
            return Err(ItemError::BadDiscrimination(a));
        }
        if !b.is_finite() {
            return Err(ItemError::BadDifficulty(b));
        }
        if !c.is_finite() || !(0.0..1.0).contains(&c) {
            return Err(ItemError::BadGuessing(c));
        }
        Ok(Self { a, b, c })
    }

    /// Rasch item (`a = 1`, `c = 0`).
    pub fn rasch(b: f64) -> Result<Self, ItemError> {
        Self::new(1.0, b, 0.0)
    }

    /// Two-parameter item (`c = 0`).
    pub fn two_pl(a: f64, b: f64) -> Result<Self, ItemError> {
        Self::new(a, b, 0.0)
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }
}

/// Which logistic model an item (or a whole session) belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Rasch,
    TwoPl,
    ThreePl,
}

impl ModelKind {
    /// Whether an item satisfies the parameter restrictions of the model
    /// (Rasch forces `a = 1, c = 0`; the two-parameter model forces `c = 0`).
    pub fn admits(&self, item: &Item) -> bool {
        match self {
            Self::Rasch => item.a == 1.0 && item.c == 0.0,
            Self::TwoPl => item.c == 0.0,
            Self::ThreePl => true,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rasch => write!(f, "rasch"),
            Self::TwoPl => write!(f, "2pl"),
            Self::ThreePl => write!(f, "3pl"),
        }
    }
}

/// Item characteristic curve `c + (1 - c) G(a (theta - b))`.
#[inline]
pub fn icc(theta: f64, item: &Item) -> f64 {
    item.c + (1.0 - item.c) * logistic(item.a * (theta - item.b))
}

/// Per-item Fisher information about `theta`.
///
/// Evaluated as `(1 - c) a^2 g^2 (1 - g) / (c + (1 - c) g)`, which is
/// algebraically identical to the `e^{2a(theta-b)}` form but never
/// overflows. For `c = 0` this is `a^2 g (1 - g)`, bounded by `a^2 / 4`
/// with equality exactly at `theta = b`.
#[inline]
pub fn fisher_info(theta: f64, item: &Item) -> f64 {
    let g = logistic(item.a * (theta - item.b));
    if item.c == 0.0 {
        if g == 0.0 {
            return 0.0;
        }
        item.a * item.a * g * (1.0 - g)
    } else {
        (1.0 - item.c) * item.a * item.a * g * g * (1.0 - g) / (item.c + (1.0 - item.c) * g)
    }
}

/// Half of `1 + sqrt(1 + 8c)`; the optimal value of `e^{a(theta-b)}`.
#[inline]
fn guessing_scale(c: f64) -> f64 {
    0.5 * (1.0 + (1.0 + 8.0 * c).sqrt())
}

/// Difficulty that maximizes [`fisher_info`] for fixed `(a, c)` at ability
/// `theta`: `theta - ln((1 + sqrt(1 + 8c)) / 2) / a`. Equals `theta` when
/// `c = 0`.
#[inline]
pub fn optimal_difficulty(theta: f64, a: f64, c: f64) -> f64 {
    debug_assert!(a > 0.0 && (0.0..1.0).contains(&c));
    theta - guessing_scale(c).ln() / a
}

/// Maximum of [`fisher_info`] over `b` for fixed `(a, c)`:
/// `a^2 / (8 (1 - c)^2) * [1 - 20c - 8c^2 + (1 + 8c)^{3/2}]`.
///
/// Identical, for every `theta`, to `fisher_info` evaluated at
/// `b = optimal_difficulty(theta, a, c)`. Strictly decreasing in `c`;
/// equals `a^2 / 4` at `c = 0`.
#[inline]
pub fn max_info_closed_form(a: f64, c: f64) -> f64 {
    debug_assert!(a > 0.0 && (0.0..1.0).contains(&c));
    let one_m_c = 1.0 - c;
    let bracket = 1.0 - 20.0 * c - 8.0 * c * c + (1.0 + 8.0 * c).powf(1.5);
    a * a / (8.0 * one_m_c * one_m_c) * bracket
}

/// Ability-free weight used by the modified three-parameter estimating
/// equation: `a (1 + sqrt(1 + 8c)) / (2c + 1 + sqrt(1 + 8c))`.
///
/// With `s = (1 + sqrt(1 + 8c)) / 2` this is `a s / (c + s)`, which is the
/// raw likelihood weight `a e^{a(theta-b)} / (c + e^{a(theta-b)})` frozen at
/// the information-optimal difficulty. Reduces to `a` when `c = 0`.
#[inline]
pub fn weight(a: f64, c: f64) -> f64 {
    debug_assert!(a > 0.0 && (0.0..1.0).contains(&c));
    let r = (1.0 + 8.0 * c).sqrt();
    a * (1.0 + r) / (2.0 * c + 1.0 + r)
}

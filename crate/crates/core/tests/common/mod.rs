//! Shared helpers for the integration test suites: seeded transcript
//! generation and an independent dense-grid-plus-bisection root oracle.
#![allow(dead_code)] // each test target uses its own subset

use cat_lab::estimator::{EstimatingMode, Transcript};
use cat_lab::irt::Item;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random transcript with both outcomes present. Parameters stay inside
/// ranges where the score remains numerically strictly monotone across
/// [-10, 10] (saturation at the grid ends would otherwise produce exact
/// floating-point ties).
pub fn random_transcript(
    rng: &mut ChaCha8Rng,
    mode: EstimatingMode,
    max_len: usize,
) -> Transcript {
    let n = rng.random_range(2..=max_len.max(2));
    let mut items = Vec::with_capacity(n);
    let mut outcomes = Vec::with_capacity(n);
    for _ in 0..n {
        let (a, c) = match mode {
            EstimatingMode::RaschScore => (1.0, 0.0),
            EstimatingMode::TwoPlScore => (rng.random_range(0.3..2.0), 0.0),
            _ => (rng.random_range(0.3..2.0), rng.random_range(0.0..0.45)),
        };
        let b = rng.random_range(-3.0..3.0);
        items.push(Item::new(a, b, c).unwrap());
        outcomes.push(rng.random::<f64>() < 0.5);
    }
    outcomes[0] = true;
    let last = outcomes.len() - 1;
    outcomes[last] = false;
    Transcript::from_pairs(&items, &outcomes)
}

/// Textbook bisection over the first sign change of `f` on a dense grid.
/// Deliberately independent of the production solver.
pub fn grid_bisection_root(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    grid_points: usize,
    tol: f64,
) -> Option<f64> {
    let step = (hi - lo) / (grid_points - 1) as f64;
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    if prev_f == 0.0 {
        return Some(prev_x);
    }
    for i in 1..grid_points {
        let x = lo + step * i as f64;
        let fx = f(x);
        if fx == 0.0 {
            return Some(x);
        }
        if prev_f.signum() != fx.signum() {
            let (mut a, mut b) = (prev_x, x);
            let sign_a = prev_f.signum();
            while b - a > tol {
                let m = 0.5 * (a + b);
                let fm = f(m);
                if fm == 0.0 {
                    return Some(m);
                }
                if fm.signum() == sign_a {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Some(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = fx;
    }
    None
}

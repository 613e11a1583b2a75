//! Calibration of a divergence value to a biased-coin probability.
//!
//! A divergence d0 is mapped to the bias p of the coin whose order-a
//! divergence from a fair coin equals d0. Restricting p to [0.5, 1] makes
//! the map one-to-one: p near 0.5 means the posteriors are practically
//! indistinguishable, p near 1 means they are far apart.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::format;

use crate::error::{Error, Result};
use crate::model::RenyiOrder;

/// Bisection stops when the bracket is this narrow; the defining-equation
/// residual is then far below the 1e-12 contract.
const BRACKET_TOL: f64 = 1e-15;
const MAX_ITERATIONS: u32 = 200;
/// Guaranteed residual of the defining equation for a != 1.
pub const RESIDUAL_TOL: f64 = 1e-12;

/// A calibrated divergence: the coin bias `p` reproducing distance `d0` at
/// order `order`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub p: f64,
    pub d0: f64,
    pub order: RenyiOrder,
    pub solver_iterations: u32,
}

// p^a + (1-p)^a, the coin moment the defining equation pins down.
fn coin_moment(p: f64, a: f64) -> f64 {
    p.powf(a) + (1.0 - p).powf(a)
}

/// Maps a divergence d0 to its calibration p in [0.5, 1].
///
/// At a = 1 the explicit formula `p = 0.5 + 0.5 sqrt(1 - e^(-2 d0))` applies
/// for every d0 >= 0. For a != 1 the defining equation
/// `2^(1-a) e^((a-1) d0) = p^a + (1-p)^a` is solved by bisection; it has a
/// root only for d0 <= ln 2 (the coin divergence saturates as p -> 1), and
/// beyond that a saturation error carrying p = 1 is returned.
pub fn calibrate(d0: f64, order: RenyiOrder) -> Result<Calibration> {
    if !d0.is_finite() || d0 < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "calibration needs a nonnegative finite divergence, got {d0}"
        )));
    }
    if d0 == 0.0 {
        return Ok(Calibration { p: 0.5, d0, order, solver_iterations: 0 });
    }
    if order.is_kl_limit() {
        // 1 - e^(-2 d0) via expm1 keeps small d0 at full precision
        let p = 0.5 + 0.5 * (-(-2.0 * d0).exp_m1()).sqrt();
        return Ok(Calibration { p, d0, order, solver_iterations: 0 });
    }
    let a = order.value();
    if d0 > core::f64::consts::LN_2 {
        return Err(Error::CalibrationSaturated { d0, p: 1.0 });
    }
    if d0 == core::f64::consts::LN_2 {
        return Ok(Calibration { p: 1.0, d0, order, solver_iterations: 0 });
    }
    // target = 2^(1-a) e^((a-1) d0) = e^((a-1)(d0 - ln 2))
    let target = ((a - 1.0) * (d0 - core::f64::consts::LN_2)).exp();
    let mut lo = 0.5;
    let mut hi = 1.0;
    // g(p) = p^a + (1-p)^a - target is monotone on [0.5, 1]: increasing for
    // a > 1, decreasing for a < 1; the sign of g(lo) tells which end moves.
    let g_lo_sign = (coin_moment(lo, a) - target).signum();
    let mut iterations = 0;
    let mut best_p = 0.75;
    let mut best_residual = f64::MAX;
    while iterations < MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // bracket exhausted at f64 resolution
            break;
        }
        let g_mid = coin_moment(mid, a) - target;
        if g_mid.abs() < best_residual {
            best_residual = g_mid.abs();
            best_p = mid;
        }
        if g_mid == 0.0 {
            break;
        }
        if g_mid.signum() == g_lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if hi - lo <= BRACKET_TOL && best_residual <= RESIDUAL_TOL {
            break;
        }
    }
    Ok(Calibration { p: best_p, d0, order, solver_iterations: iterations })
}

/// The divergence d0 whose calibration is `p`: the algebraic inverse of
/// [`calibrate`], used for round-trip checking.
pub fn calibration_inverse(p: f64, order: RenyiOrder) -> Result<f64> {
    if !p.is_finite() || !(0.5..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "calibration p must lie in [0.5, 1], got {p}"
        )));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if order.is_kl_limit() {
        if p == 1.0 {
            return Err(Error::InfiniteDivergence);
        }
        // 1 - (2p - 1)^2 = 4 p (1 - p)
        return Ok(-0.5 * (4.0 * p * (1.0 - p)).ln());
    }
    let a = order.value();
    Ok(((a - 1.0) * core::f64::consts::LN_2 + coin_moment(p, a).ln()) / (a - 1.0))
}

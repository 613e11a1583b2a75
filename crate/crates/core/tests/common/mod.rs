//! Independent reference implementations used only by tests.
//!
//! These deliberately take different routes than the library: the geometric
//! curvature oracles go through polygamma series rather than sampled
//! variances, and the Dirichlet moment oracle goes through multivariate
//! Beta functions. Agreement between these and the Monte Carlo estimators
//! is what the estimator test suites assert.

#![allow(dead_code)]

use priorcurve_core::special::{ln_beta, ln_multivariate_beta};

/// Trigamma via the recurrence and the asymptotic Bernoulli series
/// (B2..B12 terms; switch point 10 keeps the truncation below 1e-13).
pub fn trigamma(mut x: f64) -> f64 {
    assert!(x > 0.0);
    let mut acc = 0.0;
    while x < 10.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = 1.0 / 6.0
        - inv2
            * (1.0 / 30.0
                - inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0 - inv2 * (5.0 / 66.0 - inv2 * 691.0 / 2730.0))));
    acc + inv * (1.0 + 0.5 * inv + inv2 * series)
}

/// Digamma via the recurrence and the asymptotic series.
pub fn digamma(mut x: f64) -> f64 {
    assert!(x > 0.0);
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = 1.0 / 12.0
        - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0)));
    acc + x.ln() - 0.5 * inv - inv2 * series
}

/// Geometric-class curvature for a Beta prior, via trigamma:
/// Var[u ln t + v ln(1-t)] under Beta(a', b') with u = (c-1)alpha,
/// v = (c-1)beta.
pub fn beta_geometric_curvature(alpha: f64, beta: f64, c: f64, a: f64, t: u64, n: u64) -> f64 {
    let ap = alpha + t as f64;
    let bp = beta + (n - t) as f64;
    let u = (c - 1.0) * alpha;
    let v = (c - 1.0) * beta;
    a * (u * u * trigamma(ap) + v * v * trigamma(bp) - (u + v) * (u + v) * trigamma(ap + bp))
}

/// Geometric-class curvature for a Dirichlet prior, via trigamma.
pub fn dirichlet_geometric_curvature(alpha: &[f64], c: f64, a: f64, counts: &[u64]) -> f64 {
    let post: Vec<f64> = alpha.iter().zip(counts).map(|(&p, &x)| p + x as f64).collect();
    let total: f64 = post.iter().sum();
    let mut var = 0.0;
    let mut u_sum = 0.0;
    for (&p, &d) in alpha.iter().zip(&post) {
        let u = (c - 1.0) * p;
        var += u * u * trigamma(d);
        u_sum += u;
    }
    a * (var - u_sum * u_sum * trigamma(total))
}

/// Linear-class curvature for a Dirichlet prior, via multivariate Beta
/// moments of the density ratio.
pub fn dirichlet_epsilon_curvature(alpha: &[f64], c: f64, a: f64, counts: &[u64]) -> f64 {
    let post: Vec<f64> = alpha.iter().zip(counts).map(|(&p, &x)| p + x as f64).collect();
    let scaled: Vec<f64> = alpha.iter().map(|&p| c * p).collect();
    let ln_ratio = ln_multivariate_beta(alpha) - ln_multivariate_beta(&scaled);
    let moment = |m: f64| -> f64 {
        let shifted: Vec<f64> = post
            .iter()
            .zip(alpha)
            .map(|(&d, &p)| d + m * (c - 1.0) * p)
            .collect();
        assert!(shifted.iter().all(|&x| x > 0.0), "moment does not exist");
        (m * ln_ratio + ln_multivariate_beta(&shifted) - ln_multivariate_beta(&post)).exp()
    };
    let e1 = moment(1.0);
    let e2 = moment(2.0);
    a * (e2 - e1 * e1)
}

/// KL(Beta(a1,b1) || Beta(a0,b0)) via digamma.
pub fn kl_beta(a1: f64, b1: f64, a0: f64, b0: f64) -> f64 {
    ln_beta(a0, b0) - ln_beta(a1, b1)
        + (a1 - a0) * digamma(a1)
        + (b1 - b0) * digamma(b1)
        + (a0 + b0 - a1 - b1) * digamma(a1 + b1)
}

#[cfg(test)]
mod self_checks {
    use super::*;

    #[test]
    fn polygamma_reference_values() {
        assert!((trigamma(12.0) - 0.086_901_872_871_768_4).abs() < 1e-13);
        assert!((trigamma(24.0) - 0.042_546_774_368_336_7).abs() < 1e-13);
        // trigamma(0.5) = pi^2 / 2
        let want = core::f64::consts::PI * core::f64::consts::PI / 2.0;
        assert!((trigamma(0.5) - want).abs() < 1e-12);
        // digamma(1) = -gamma (Euler-Mascheroni)
        assert!((digamma(1.0) + 0.577_215_664_901_532_9).abs() < 1e-12);
    }
}

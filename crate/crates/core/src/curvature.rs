//! Local curvature of the divergence between contaminated and base
//! posteriors at zero contamination.
//!
//! For the linear class the curvature is `a * Var[q(theta)/pi0(theta)]`, for
//! the geometric class `a * Var[ln(q(theta)/pi0(theta))]`, both variances
//! taken under the base posterior. Small curvature means the inference is
//! robust to the contamination.
//!
//! Monte Carlo estimators work for every family; the normal-location family
//! has exact closed forms for both classes, and the Beta family has an exact
//! moment expression for the linear class that doubles as the estimators'
//! independent oracle.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::format;
use alloc::vec;

use crate::error::{Error, Result};
use crate::model::{
    base_posterior, contaminant_of, ContaminationClass, PriorSpec, RatioEval, RenyiOrder,
    SufficientStats,
};
use crate::moments::Moments;
use crate::sampler::SeededStream;
use crate::special::{ln_beta, require_positive};

/// Smallest accepted Monte Carlo sample size.
pub const MIN_DRAWS: u64 = 100;
/// Draw count used by the worked examples and the batch front end.
pub const DEFAULT_DRAWS: u64 = 1_000_000;
/// Pearson kurtosis above which a variance estimate is flagged unreliable.
pub const KURTOSIS_GUARD: f64 = 1e3;

// exp() overflows just above 709.78; past this the linear-class weights need
// a shifted second pass.
const LOG_OVERFLOW_GUARD: f64 = 700.0;

/// How an [`Estimate`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMethod {
    MonteCarlo,
    ClosedForm,
}

/// A point estimate with its uncertainty.
///
/// Closed forms carry a zero standard error and zero draws. Monte Carlo
/// estimates of an exactly-zero quantity (e.g. c = 1, where every sampled
/// ratio is 1) also carry a zero standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub draws: u64,
    pub method: EstimateMethod,
    /// Set when the sampled weights are so heavy-tailed (kurtosis above
    /// [`KURTOSIS_GUARD`]) or extreme that the variance estimate should not
    /// be trusted.
    pub unreliable: bool,
}

impl Estimate {
    fn closed(value: f64) -> Self {
        Self { value, std_error: 0.0, draws: 0, method: EstimateMethod::ClosedForm, unreliable: false }
    }
}

/// Inputs of one curvature evaluation.
#[derive(Debug, Clone)]
pub struct CurvatureRequest {
    pub prior: PriorSpec,
    pub scale: f64,
    pub order: RenyiOrder,
    pub class: ContaminationClass,
    pub stats: SufficientStats,
    pub draws: u64,
    pub stream: SeededStream,
}

impl CurvatureRequest {
    pub fn new(
        prior: PriorSpec,
        scale: f64,
        order: RenyiOrder,
        class: ContaminationClass,
        stats: SufficientStats,
        draws: u64,
        stream: SeededStream,
    ) -> Result<Self> {
        require_positive(scale, "contaminant scale c")?;
        if prior.family() != stats.family() {
            return Err(Error::FamilyMismatch {
                expected: prior.family().name(),
                got: stats.family().name(),
            });
        }
        if draws < MIN_DRAWS {
            return Err(Error::InvalidParameter(format!(
                "mc draws must be >= {MIN_DRAWS}, got {draws}"
            )));
        }
        Ok(Self { prior, scale, order, class, stats, draws, stream })
    }
}

/// Drives `draws` posterior samples through `f(log_ratio)`.
///
/// Rerunning with the same stream replays the identical theta sequence,
/// which the shifted overflow fallback below relies on.
fn accumulate_log_ratios<F: FnMut(f64)>(req: &CurvatureRequest, mut f: F) -> Result<()> {
    let contaminant = contaminant_of(&req.prior, req.scale)?;
    let posterior = base_posterior(&req.prior, &req.stats)?;
    let params = posterior.conjugate().expect("base posterior is conjugate");
    let ratio = RatioEval::new(&req.prior, &contaminant)?;
    let mut sampler = req.stream.sampler();
    match params {
        PriorSpec::Beta { alpha, beta } => {
            for _ in 0..req.draws {
                f(ratio.eval_scalar(sampler.beta(*alpha, *beta)));
            }
        }
        PriorSpec::NormalLocation { location, variance } => {
            for _ in 0..req.draws {
                f(ratio.eval_scalar(sampler.normal(*location, *variance)));
            }
        }
        PriorSpec::Dirichlet { concentration } => {
            let mut point = vec![0.0; concentration.len()];
            for _ in 0..req.draws {
                sampler.dirichlet(concentration, &mut point);
                f(ratio.eval_simplex(&point));
            }
        }
    }
    Ok(())
}

fn finish_variance(acc: &Moments, order: RenyiOrder, scale_back: f64) -> Estimate {
    let a = order.value();
    let value = a * acc.sample_variance() * (scale_back * scale_back);
    let std_error = a * acc.variance_std_error() * (scale_back * scale_back);
    let unreliable = acc.kurtosis() > KURTOSIS_GUARD || !value.is_finite() || !std_error.is_finite();
    Estimate {
        value: if value.is_finite() { value } else { f64::MAX },
        std_error: if std_error.is_finite() { std_error } else { f64::MAX },
        draws: acc.count(),
        method: EstimateMethod::MonteCarlo,
        unreliable,
    }
}

/// Monte Carlo curvature for the linear contamination class:
/// `a * Var[q/pi0]` under the base posterior, with a delta-method standard
/// error from the second and fourth central moments.
pub fn curvature_epsilon_mc(req: &CurvatureRequest) -> Result<Estimate> {
    if req.class != ContaminationClass::EpsilonLinear {
        return Err(Error::InvalidParameter(
            "curvature_epsilon_mc requires the epsilon-linear class".into(),
        ));
    }
    let mut acc = Moments::new();
    let mut max_log = f64::NEG_INFINITY;
    accumulate_log_ratios(req, |lr| {
        max_log = max_log.max(lr);
        acc.push(lr.exp());
    })?;
    if max_log <= LOG_OVERFLOW_GUARD {
        return Ok(finish_variance(&acc, req.order, 1.0));
    }
    // The ratio overflows f64; replay the same draws with a max shift and
    // scale the variance back. The estimate may still exceed f64 range, in
    // which case it is clamped to MAX and flagged, never NaN.
    let shift = max_log;
    let mut shifted = Moments::new();
    accumulate_log_ratios(req, |lr| shifted.push((lr - shift).exp()))?;
    let mut est = finish_variance(&shifted, req.order, shift.exp());
    est.unreliable = true;
    Ok(est)
}

/// Monte Carlo curvature for the geometric contamination class:
/// `a * Var[ln(q/pi0)]` under the base posterior.
pub fn curvature_geometric_mc(req: &CurvatureRequest) -> Result<Estimate> {
    if req.class != ContaminationClass::Geometric {
        return Err(Error::InvalidParameter(
            "curvature_geometric_mc requires the geometric class".into(),
        ));
    }
    let mut acc = Moments::new();
    accumulate_log_ratios(req, |lr| acc.push(lr))?;
    Ok(finish_variance(&acc, req.order, 1.0))
}

fn expect_normal(prior: &PriorSpec) -> Result<(f64, f64)> {
    match prior {
        PriorSpec::NormalLocation { location, variance } => Ok((*location, *variance)),
        other => Err(Error::FamilyMismatch { expected: "normal-location", got: other.family().name() }),
    }
}

/// Exact geometric-class curvature for the normal-location family:
/// `a * theta0^2 (c-1)^2 / sigma0^4 * (1/sigma0^2 + n)^-1`.
///
/// Depends on the sample only through its size: larger n or a flatter prior
/// shrink it toward zero, a larger prior location inflates it.
pub fn curvature_normal_geometric_closed(
    prior: &PriorSpec,
    scale: f64,
    order: RenyiOrder,
    sample_size: u64,
) -> Result<Estimate> {
    let (location, variance) = expect_normal(prior)?;
    require_positive(scale, "contaminant scale c")?;
    if sample_size == 0 {
        return Err(Error::InvalidParameter("sample size must be >= 1".into()));
    }
    let posterior_variance = 1.0 / (1.0 / variance + sample_size as f64);
    let slope = location * (scale - 1.0) / variance;
    Ok(Estimate::closed(order.value() * slope * slope * posterior_variance))
}

// ln(exp(x) - 1) for x > 0.
fn ln_expm1(x: f64) -> f64 {
    if x > 36.0 {
        x
    } else {
        x.exp_m1().ln()
    }
}

/// Exact linear-class curvature for the normal-location family, via the
/// moment generating function of the base posterior:
/// `a * e^{theta0^2(1-c^2)/v} [ M(2 theta0 (c-1)/v) - M(theta0 (c-1)/v)^2 ]`.
///
/// Evaluated in log space; if the value exceeds the f64 range the error
/// carries ln(value) instead.
pub fn curvature_normal_epsilon_closed(
    prior: &PriorSpec,
    scale: f64,
    order: RenyiOrder,
    stats: &SufficientStats,
) -> Result<Estimate> {
    let (location, variance) = expect_normal(prior)?;
    require_positive(scale, "contaminant scale c")?;
    let (mean, size) = match stats {
        SufficientStats::Normal { mean, size } => (*mean, *size),
        other => {
            return Err(Error::FamilyMismatch { expected: "normal stats", got: other.family().name() })
        }
    };
    let posterior_variance = 1.0 / (1.0 / variance + size as f64);
    let posterior_mean = (location / variance + size as f64 * mean) * posterior_variance;
    let slope = location * (scale - 1.0) / variance;
    let spread = slope * slope * posterior_variance;
    if spread == 0.0 {
        // c = 1 or theta0 = 0: the contaminant coincides with the prior.
        return Ok(Estimate::closed(0.0));
    }
    let log_value = order.value().ln()
        + location * location * (1.0 - scale * scale) / variance
        + 2.0 * slope * posterior_mean
        + spread
        + ln_expm1(spread);
    if log_value >= f64::MAX.ln() {
        return Err(Error::ClosedFormOverflow { log_value });
    }
    Ok(Estimate::closed(log_value.exp()))
}

/// Exact linear-class curvature for the Beta family via Beta-function
/// moments of the density ratio. Errors with [`Error::MomentDoesNotExist`]
/// when a required Beta-function argument is nonpositive, which signals that
/// the Monte Carlo estimator for the same configuration has infinite
/// variance.
pub fn curvature_beta_epsilon_closed(
    prior: &PriorSpec,
    scale: f64,
    order: RenyiOrder,
    stats: &SufficientStats,
) -> Result<Estimate> {
    let (alpha, beta) = match prior {
        PriorSpec::Beta { alpha, beta } => (*alpha, *beta),
        other => return Err(Error::FamilyMismatch { expected: "beta", got: other.family().name() }),
    };
    require_positive(scale, "contaminant scale c")?;
    let (t, n) = match stats {
        SufficientStats::Bernoulli { successes, trials } => (*successes as f64, *trials as f64),
        other => {
            return Err(Error::FamilyMismatch { expected: "bernoulli stats", got: other.family().name() })
        }
    };
    let post_alpha = alpha + t;
    let post_beta = beta + n - t;
    let du = (scale - 1.0) * alpha;
    let dv = (scale - 1.0) * beta;
    let ln_norm_ratio = ln_beta(alpha, beta) - ln_beta(scale * alpha, scale * beta);
    let ln_moment = |m: f64| -> Result<f64> {
        for argument in [post_alpha + m * du, post_beta + m * dv] {
            if argument <= 0.0 {
                return Err(Error::MomentDoesNotExist { argument });
            }
        }
        Ok(m * ln_norm_ratio + ln_beta(post_alpha + m * du, post_beta + m * dv)
            - ln_beta(post_alpha, post_beta))
    };
    let ln_e1 = ln_moment(1.0)?;
    let ln_e2 = ln_moment(2.0)?;
    // Var = E[r^2] - E[r]^2 = exp(2 ln E1) * expm1(ln E2 - 2 ln E1)
    let gap = ln_e2 - 2.0 * ln_e1;
    if gap <= 0.0 {
        // degenerate ratio (c = 1); Jensen makes the gap strictly positive
        // otherwise
        return Ok(Estimate::closed(0.0));
    }
    let log_value = order.value().ln() + 2.0 * ln_e1 + ln_expm1(gap);
    if log_value >= f64::MAX.ln() {
        return Err(Error::ClosedFormOverflow { log_value });
    }
    Ok(Estimate::closed(log_value.exp()))
}

/// Agreement report between a small-contamination divergence and its
/// quadratic approximation `eps^2/2 * curvature`.
#[derive(Debug, Clone, Copy)]
pub struct TaylorReport {
    /// `eps^2 / 2 * curvature`.
    pub quadratic_term: f64,
    pub absolute_gap: f64,
    /// `absolute_gap / max(distance, 1e-8)`.
    pub relative_gap: f64,
}

/// Compares a divergence computed at contamination `epsilon` with the
/// quadratic term predicted by the curvature. Tight for small epsilon; the
/// remainder is O(eps^3).
pub fn taylor_consistency(distance: f64, curvature: &Estimate, epsilon: f64) -> TaylorReport {
    let quadratic_term = 0.5 * epsilon * epsilon * curvature.value;
    let absolute_gap = (distance - quadratic_term).abs();
    TaylorReport {
        quadratic_term,
        absolute_gap,
        relative_gap: absolute_gap / distance.max(1e-8),
    }
}

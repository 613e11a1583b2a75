//! Order-a divergence (and its a -> 1 KL limit) between the contaminated
//! posterior and the base posterior.
//!
//! `renyi_mc`/`kl_mc` estimate the divergence from base-posterior draws for
//! any family and either contamination class. Exact routes exist where both
//! posteriors are conjugate members (`renyi_closed_conjugate`) and, for the
//! one-dimensional Beta family, by adaptive quadrature (`renyi_quadrature`),
//! which covers the mixture posterior of the linear class where no closed
//! form exists.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::format;
use alloc::vec;

use crate::curvature::{Estimate, EstimateMethod, MIN_DRAWS};
use crate::error::{Error, Result};
use crate::model::{
    base_posterior, contaminant_of, epsilon_posterior, geometric_posterior, ContaminationClass,
    ContaminationSetup, PosteriorRatioEval, PosteriorRep, PriorSpec, RenyiOrder, SufficientStats,
};
use crate::moments::{LogMeanExp, Moments};
use crate::sampler::SeededStream;
use crate::special::{ln_beta, ln_multivariate_beta, log_sum_exp};

/// Inputs of one divergence evaluation.
#[derive(Debug, Clone)]
pub struct DivergenceRequest {
    pub prior: PriorSpec,
    pub contamination: ContaminationSetup,
    pub order: RenyiOrder,
    pub stats: SufficientStats,
    pub draws: u64,
    pub stream: SeededStream,
}

impl DivergenceRequest {
    pub fn new(
        prior: PriorSpec,
        contamination: ContaminationSetup,
        order: RenyiOrder,
        stats: SufficientStats,
        draws: u64,
        stream: SeededStream,
    ) -> Result<Self> {
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
        Ok(Self { prior, contamination, order, stats, draws, stream })
    }

    /// Contaminated posterior for the request's class and weight.
    pub fn contaminated_posterior(&self) -> Result<PosteriorRep> {
        let q = contaminant_of(&self.prior, self.contamination.scale)?;
        match self.contamination.class {
            ContaminationClass::EpsilonLinear => {
                epsilon_posterior(&self.prior, &q, self.contamination.epsilon, &self.stats)
            }
            ContaminationClass::Geometric => {
                geometric_posterior(&self.prior, &q, self.contamination.epsilon, &self.stats)
            }
        }
    }

    fn base_params(&self) -> Result<PriorSpec> {
        Ok(base_posterior(&self.prior, &self.stats)?
            .conjugate()
            .expect("base posterior is conjugate")
            .clone())
    }
}

/// Drives `draws` base-posterior samples through `f(log pi - log pi0)`.
fn accumulate_posterior_log_ratios<F: FnMut(f64)>(req: &DivergenceRequest, mut f: F) -> Result<()> {
    let base = req.base_params()?;
    let contaminated = req.contaminated_posterior()?;
    let ratio = PosteriorRatioEval::new(&contaminated, &base)?;
    let mut sampler = req.stream.sampler();
    match &base {
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

/// Monte Carlo divergence of order a != 1:
/// `(1/(a-1)) ln E_pi0[(pi/pi0)^a]`, accumulated as a max-shifted
/// log-mean-exp with a delta-method standard error. The estimate is clamped
/// at zero (the divergence is nonnegative).
pub fn renyi_mc(req: &DivergenceRequest) -> Result<Estimate> {
    if req.order.is_kl_limit() {
        return Err(Error::InvalidParameter(
            "renyi_mc is undefined at a = 1; use kl_mc for the KL limit".into(),
        ));
    }
    let a = req.order.value();
    let mut acc = LogMeanExp::new();
    accumulate_posterior_log_ratios(req, |lr| acc.push(a * lr))?;
    if acc.is_empty() {
        return Err(Error::DisjointSupport);
    }
    let value = (acc.value() / (a - 1.0)).max(0.0);
    Ok(Estimate {
        value,
        std_error: acc.std_error() / (a - 1.0).abs(),
        draws: acc.count(),
        method: EstimateMethod::MonteCarlo,
        unreliable: false,
    })
}

/// Monte Carlo KL divergence (the a = 1 limit):
/// mean of `r ln r` over base-posterior draws, `r` the posterior density
/// ratio. Clamped at zero.
pub fn kl_mc(req: &DivergenceRequest) -> Result<Estimate> {
    if !req.order.is_kl_limit() {
        return Err(Error::InvalidParameter(
            "kl_mc requires a = 1; use renyi_mc otherwise".into(),
        ));
    }
    let mut acc = Moments::new();
    let mut overflowed = 0u64;
    accumulate_posterior_log_ratios(req, |lr| {
        let y = lr.exp() * lr;
        if y.is_finite() {
            acc.push(y);
        } else {
            overflowed += 1;
        }
    })?;
    if overflowed > 0 {
        return Ok(Estimate {
            value: f64::MAX,
            std_error: f64::MAX,
            draws: req.draws,
            method: EstimateMethod::MonteCarlo,
            unreliable: true,
        });
    }
    Ok(Estimate {
        value: acc.mean().max(0.0),
        std_error: acc.mean_std_error(),
        draws: acc.count(),
        method: EstimateMethod::MonteCarlo,
        unreliable: false,
    })
}

/// Dispatches on the order: `kl_mc` at a = 1, `renyi_mc` otherwise. The
/// general formula is never evaluated at a = 1.
pub fn divergence_mc(req: &DivergenceRequest) -> Result<Estimate> {
    if req.order.is_kl_limit() {
        kl_mc(req)
    } else {
        renyi_mc(req)
    }
}

/// Exact order-a divergence between two conjugate members of one family:
/// `(1/(a-1)) ln int p1^a p0^(1-a)`.
///
/// Defined when the componentwise blend `a * params1 + (1-a) * params0`
/// stays in the valid domain (always for a < 1, can fail for a > 1) and
/// undefined exactly at a = 1 — evaluate nearby and interpolate for the KL
/// limit.
pub fn renyi_closed_conjugate(
    post1: &PosteriorRep,
    post0: &PosteriorRep,
    order: RenyiOrder,
) -> Result<f64> {
    if order.is_kl_limit() {
        return Err(Error::UndefinedAtKlLimit);
    }
    let a = order.value();
    let p1 = post1.conjugate().ok_or_else(|| {
        Error::InvalidParameter("closed form needs a conjugate (non-mixture) posterior".into())
    })?;
    let p0 = post0.conjugate().ok_or_else(|| {
        Error::InvalidParameter("closed form needs a conjugate (non-mixture) posterior".into())
    })?;
    if p1 == p0 {
        return Ok(0.0);
    }
    let blend = |x1: f64, x0: f64| -> Result<f64> {
        let b = a * x1 + (1.0 - a) * x0;
        if b > 0.0 {
            Ok(b)
        } else {
            Err(Error::RenyiOrderTooLarge { parameter: b })
        }
    };
    match (p1, p0) {
        (PriorSpec::Beta { alpha: a1, beta: b1 }, PriorSpec::Beta { alpha: a0, beta: b0 }) => {
            let ba = blend(*a1, *a0)?;
            let bb = blend(*b1, *b0)?;
            Ok((ln_beta(ba, bb) - a * ln_beta(*a1, *b1) - (1.0 - a) * ln_beta(*a0, *b0)) / (a - 1.0))
        }
        (
            PriorSpec::Dirichlet { concentration: c1 },
            PriorSpec::Dirichlet { concentration: c0 },
        ) => {
            if c1.len() != c0.len() {
                return Err(Error::InvalidParameter(
                    "dimension mismatch between Dirichlet members".into(),
                ));
            }
            let blended = c1
                .iter()
                .zip(c0.iter())
                .map(|(&x1, &x0)| blend(x1, x0))
                .collect::<Result<alloc::vec::Vec<f64>>>()?;
            Ok((ln_multivariate_beta(&blended)
                - a * ln_multivariate_beta(c1)
                - (1.0 - a) * ln_multivariate_beta(c0))
                / (a - 1.0))
        }
        (
            PriorSpec::NormalLocation { location: m1, variance: v1 },
            PriorSpec::NormalLocation { location: m0, variance: v0 },
        ) => {
            // int p1^a p0^(1-a) is Gaussian iff the blended precision is
            // positive
            let precision = a / v1 + (1.0 - a) / v0;
            if precision <= 0.0 {
                return Err(Error::RenyiOrderTooLarge { parameter: precision });
            }
            let weighted_mean = a * m1 / v1 + (1.0 - a) * m0 / v0;
            let weighted_sq = a * m1 * m1 / v1 + (1.0 - a) * m0 * m0 / v0;
            let ln_integral = -0.5 * precision.ln() - 0.5 * a * v1.ln() - 0.5 * (1.0 - a) * v0.ln()
                + 0.5 * (weighted_mean * weighted_mean / precision - weighted_sq);
            Ok(ln_integral / (a - 1.0))
        }
        _ => Err(Error::FamilyMismatch { expected: p0.family().name(), got: p1.family().name() }),
    }
}

// ---------------------------------------------------------------------------
// quadrature
// ---------------------------------------------------------------------------

/// Absolute tolerance of the quadrature oracle.
const QUAD_TOL: f64 = 1e-10;
const QUAD_MAX_LEVEL: u32 = 12;
// |t| beyond which the substitution weight underflows any integrand of
// interest.
const QUAD_T_MAX: f64 = 6.5;

/// Beta log density as a function of (ln x, ln(1-x)); the substitution below
/// produces both logs at full precision, so endpoint behavior is exact.
#[derive(Debug, Clone, Copy)]
struct BetaLogPdf {
    am1: f64,
    bm1: f64,
    ln_norm: f64,
}

impl BetaLogPdf {
    fn new(params: &PriorSpec) -> Result<Self> {
        match params {
            PriorSpec::Beta { alpha, beta } => Ok(Self {
                am1: alpha - 1.0,
                bm1: beta - 1.0,
                ln_norm: ln_beta(*alpha, *beta),
            }),
            other => Err(Error::FamilyMismatch { expected: "beta", got: other.family().name() }),
        }
    }

    #[inline]
    fn eval(&self, ln_x: f64, ln_1mx: f64) -> f64 {
        self.am1 * ln_x + self.bm1 * ln_1mx - self.ln_norm
    }
}

#[derive(Debug, Clone)]
enum BetaPosteriorLogPdf {
    Conjugate(BetaLogPdf),
    Mixture { ln_w: f64, ln_1mw: f64, first: BetaLogPdf, second: BetaLogPdf },
}

impl BetaPosteriorLogPdf {
    fn new(post: &PosteriorRep) -> Result<Self> {
        Ok(match post {
            PosteriorRep::Conjugate(p) => BetaPosteriorLogPdf::Conjugate(BetaLogPdf::new(p)?),
            PosteriorRep::Mixture { weight, primary, secondary } => BetaPosteriorLogPdf::Mixture {
                ln_w: weight.ln(),
                ln_1mw: (1.0 - weight).ln(),
                first: BetaLogPdf::new(primary)?,
                second: BetaLogPdf::new(secondary)?,
            },
        })
    }

    #[inline]
    fn eval(&self, ln_x: f64, ln_1mx: f64) -> f64 {
        match self {
            BetaPosteriorLogPdf::Conjugate(p) => p.eval(ln_x, ln_1mx),
            BetaPosteriorLogPdf::Mixture { ln_w, ln_1mw, first, second } => log_sum_exp(
                ln_w + first.eval(ln_x, ln_1mx),
                ln_1mw + second.eval(ln_x, ln_1mx),
            ),
        }
    }

    /// Smallest exponent of x (resp. 1-x) across components, controlling the
    /// boundary behavior of the density.
    fn min_exponents(&self) -> (f64, f64) {
        match self {
            BetaPosteriorLogPdf::Conjugate(p) => (p.am1 + 1.0, p.bm1 + 1.0),
            BetaPosteriorLogPdf::Mixture { first, second, .. } => (
                (first.am1 + 1.0).min(second.am1 + 1.0),
                (first.bm1 + 1.0).min(second.bm1 + 1.0),
            ),
        }
    }
}

/// Integrates `f(ln x, ln(1-x))` over x in (0, 1) with the tanh-sinh (double
/// exponential) substitution, refining the mesh until successive levels
/// agree within `tol`. Robust to integrable endpoint singularities.
fn tanh_sinh_unit<F: Fn(f64, f64) -> f64>(f: F, tol: f64) -> Result<f64> {
    // x(t) = 1/(1 + e^(-2u)), u = (pi/2) sinh t; both ln x and ln(1-x) come
    // out exact near the endpoints, and the weight is evaluated in log space
    // so large |t| underflows to zero instead of overflowing.
    let term = |t: f64| -> f64 {
        let u = core::f64::consts::FRAC_PI_2 * t.sinh();
        let (ln_x, ln_1mx) = if u >= 0.0 {
            (-(-2.0 * u).exp().ln_1p(), -2.0 * u - (-2.0 * u).exp().ln_1p())
        } else {
            (2.0 * u - (2.0 * u).exp().ln_1p(), -(2.0 * u).exp().ln_1p())
        };
        let ln_cosh_u = u.abs() + (-2.0 * u.abs()).exp().ln_1p() - core::f64::consts::LN_2;
        let ln_weight = (core::f64::consts::FRAC_PI_4 * t.cosh()).ln() - 2.0 * ln_cosh_u;
        let w = ln_weight.exp();
        if w == 0.0 {
            return 0.0;
        }
        f(ln_x, ln_1mx) * w
    };

    let mut evaluations = 0u32;
    let mut h = 1.0;
    let mut sum = term(0.0);
    evaluations += 1;
    let mut k = 1;
    while (k as f64) * h <= QUAD_T_MAX {
        let t = k as f64 * h;
        sum += term(t) + term(-t);
        evaluations += 2;
        k += 1;
    }
    let mut integral = h * sum;

    let mut last_delta = f64::MAX;
    for _ in 0..QUAD_MAX_LEVEL {
        h *= 0.5;
        // new points sit at odd multiples of the refined step
        let mut new_sum = 0.0;
        let mut k = 1;
        while (k as f64) * h <= QUAD_T_MAX {
            let t = k as f64 * h;
            new_sum += term(t) + term(-t);
            evaluations += 2;
            k += 2;
        }
        let refined = 0.5 * integral + h * new_sum;
        last_delta = (refined - integral).abs();
        integral = refined;
        if last_delta <= tol {
            return Ok(integral);
        }
    }
    Err(Error::QuadratureDidNotConverge { evaluations, last_delta })
}

/// Order-a divergence for the Beta family by adaptive quadrature of
/// `int pi^a pi0^(1-a)` over (0, 1) to absolute tolerance 1e-10 (the KL
/// integrand replaces it at a = 1). This is the independent oracle for the
/// mixture posterior of the linear class, where no closed form exists.
pub fn renyi_quadrature(req: &DivergenceRequest) -> Result<f64> {
    if req.prior.family() != crate::model::Family::Beta {
        return Err(Error::FamilyMismatch { expected: "beta", got: req.prior.family().name() });
    }
    let base = PosteriorRep::Conjugate(req.base_params()?);
    let contaminated = req.contaminated_posterior()?;
    if contaminated == base {
        return Ok(0.0);
    }
    let pi0 = BetaPosteriorLogPdf::new(&base)?;
    let pi = BetaPosteriorLogPdf::new(&contaminated)?;
    let a = req.order.value();

    if req.order.is_kl_limit() {
        let integral = tanh_sinh_unit(
            |ln_x, ln_1mx| {
                let l1 = pi.eval(ln_x, ln_1mx);
                let l0 = pi0.eval(ln_x, ln_1mx);
                l1.exp() * (l1 - l0)
            },
            QUAD_TOL,
        )?;
        return Ok(integral.max(0.0));
    }

    // The order-a integrand behaves like x^(blend-1) at the endpoints; a
    // nonpositive blended exponent means the integral diverges.
    let (min_a1, min_b1) = pi.min_exponents();
    let (a0, b0) = pi0.min_exponents();
    for blended in [a * min_a1 + (1.0 - a) * a0, a * min_b1 + (1.0 - a) * b0] {
        if blended <= 0.0 {
            return Err(Error::RenyiOrderTooLarge { parameter: blended });
        }
    }
    let integral = tanh_sinh_unit(
        |ln_x, ln_1mx| (a * pi.eval(ln_x, ln_1mx) + (1.0 - a) * pi0.eval(ln_x, ln_1mx)).exp(),
        QUAD_TOL,
    )?;
    Ok((integral.ln() / (a - 1.0)).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ContaminationClass::{EpsilonLinear, Geometric};

    fn stats() -> SufficientStats {
        SufficientStats::bernoulli(11, 20).unwrap()
    }

    fn beta_request(
        prior: (f64, f64),
        scale: f64,
        class: ContaminationClass,
        epsilon: f64,
        a: f64,
        draws: u64,
        stream_id: u64,
    ) -> DivergenceRequest {
        DivergenceRequest::new(
            PriorSpec::beta(prior.0, prior.1).unwrap(),
            ContaminationSetup::new(scale, class, epsilon).unwrap(),
            RenyiOrder::new(a).unwrap(),
            stats(),
            draws,
            SeededStream::new(20_260_810, stream_id),
        )
        .unwrap()
    }

    #[test]
    fn zero_contamination_is_exactly_zero() {
        let req = beta_request((1.0, 3.0), 3.0, EpsilonLinear, 0.0, 0.5, 1000, 0);
        let est = renyi_mc(&req).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.std_error, 0.0);
        let req = beta_request((1.0, 3.0), 3.0, EpsilonLinear, 0.0, 1.0, 1000, 0);
        let est = kl_mc(&req).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.std_error, 0.0);
        assert_eq!(renyi_quadrature(&beta_request((1.0, 3.0), 3.0, Geometric, 0.0, 2.0, 1000, 0)).unwrap(), 0.0);
    }

    #[test]
    fn renyi_mc_matches_quadrature_on_mixture() {
        // exact quadrature value 0.001820368988 for Beta(1,1), c=3, a=0.5,
        // eps=0.5
        let req = beta_request((1.0, 1.0), 3.0, EpsilonLinear, 0.5, 0.5, 400_000, 1);
        let quad = renyi_quadrature(&req).unwrap();
        assert!((quad - 0.001_820_368_988).abs() < 1e-9);
        let mc = renyi_mc(&req).unwrap();
        assert!(
            (mc.value - quad).abs() < 4.0 * mc.std_error,
            "mc {} +- {} vs quad {quad}",
            mc.value,
            mc.std_error
        );
    }

    #[test]
    fn kl_mc_matches_quadrature() {
        let req = beta_request((1.0, 1.0), 3.0, EpsilonLinear, 0.5, 1.0, 400_000, 2);
        let quad = renyi_quadrature(&req).unwrap();
        assert!((quad - 0.003_524_482_934).abs() < 1e-9);
        let mc = kl_mc(&req).unwrap();
        assert!((mc.value - quad).abs() < 4.0 * mc.std_error);
    }

    #[test]
    fn quadrature_matches_closed_conjugate_on_degenerate_mixtures() {
        // eps = 1 collapses the mixture to the contaminant posterior, where
        // the conjugate closed form applies
        for a in [0.5, 2.0] {
            let req = beta_request((3.0, 1.0), 5.0, EpsilonLinear, 1.0, a, 1000, 0);
            let quad = renyi_quadrature(&req).unwrap();
            let closed = renyi_closed_conjugate(
                &req.contaminated_posterior().unwrap(),
                &PosteriorRep::Conjugate(req.base_params().unwrap()),
                req.order,
            )
            .unwrap();
            assert!((quad - closed).abs() < 1e-9, "a={a}: {quad} vs {closed}");
        }
    }

    #[test]
    fn closed_conjugate_reference_cells() {
        // geometric class at full contamination: Beta(16,24) vs Beta(12,12)
        let req = beta_request((1.0, 3.0), 5.0, Geometric, 1.0, 0.5, 1000, 0);
        let d = renyi_closed_conjugate(
            &req.contaminated_posterior().unwrap(),
            &PosteriorRep::Conjugate(req.base_params().unwrap()),
            req.order,
        )
        .unwrap();
        assert!((d - 0.342_099_315_055).abs() < 1e-9);
        // identical posteriors
        let base = PosteriorRep::Conjugate(req.base_params().unwrap());
        assert_eq!(renyi_closed_conjugate(&base, &base, req.order).unwrap(), 0.0);
    }

    #[test]
    fn closed_conjugate_normal_equal_variance_identity() {
        // equal variances: d = a (mu1 - mu0)^2 / (2 v)
        let p1 = PosteriorRep::Conjugate(PriorSpec::normal_location(1.0, 2.0).unwrap());
        let p0 = PosteriorRep::Conjugate(PriorSpec::normal_location(0.0, 2.0).unwrap());
        let d = renyi_closed_conjugate(&p1, &p0, RenyiOrder::new(0.5).unwrap()).unwrap();
        assert!((d - 0.5 / 4.0).abs() < 1e-14);
        // unequal variances against an independent quadrature evaluation
        let p1 = PosteriorRep::Conjugate(PriorSpec::normal_location(2.0, 0.5).unwrap());
        let p0 = PosteriorRep::Conjugate(PriorSpec::normal_location(0.0, 1.0).unwrap());
        let d = renyi_closed_conjugate(&p1, &p0, RenyiOrder::new(0.5).unwrap()).unwrap();
        assert!((d - 1.392_224_851_161_525_2).abs() < 1e-12);
        let d = renyi_closed_conjugate(&p1, &p0, RenyiOrder::new(2.0).unwrap()).unwrap();
        assert!((d - 2.810_507_702_892_556_5).abs() < 1e-12);
    }

    #[test]
    fn closed_conjugate_rejects_invalid_orders() {
        let p1 = PosteriorRep::Conjugate(PriorSpec::beta(1.0, 30.0).unwrap());
        let p0 = PosteriorRep::Conjugate(PriorSpec::beta(12.0, 12.0).unwrap());
        assert!(matches!(
            renyi_closed_conjugate(&p1, &p0, RenyiOrder::new(2.0).unwrap()),
            Err(Error::RenyiOrderTooLarge { .. })
        ));
        assert!(matches!(
            renyi_closed_conjugate(&p1, &p0, RenyiOrder::kl()),
            Err(Error::UndefinedAtKlLimit)
        ));
        // normal pair where the blended precision flips sign at a = 2
        let p1 = PosteriorRep::Conjugate(PriorSpec::normal_location(0.0, 3.0).unwrap());
        let p0 = PosteriorRep::Conjugate(PriorSpec::normal_location(1.0, 1.0).unwrap());
        assert!(matches!(
            renyi_closed_conjugate(&p1, &p0, RenyiOrder::new(2.0).unwrap()),
            Err(Error::RenyiOrderTooLarge { .. })
        ));
    }

    #[test]
    fn kl_limit_interpolation_brackets_closed_form() {
        // KL(Beta(14,18) || Beta(12,12)) = 0.212547456658; a = 1 +- 1e-4
        // closed forms straddle it within 1e-4
        let req = beta_request((1.0, 3.0), 5.0, Geometric, 0.5, 2.0, 1000, 0);
        let post = req.contaminated_posterior().unwrap();
        let base = PosteriorRep::Conjugate(req.base_params().unwrap());
        let lo = renyi_closed_conjugate(&post, &base, RenyiOrder::new(1.0 - 1e-4).unwrap()).unwrap();
        let hi = renyi_closed_conjugate(&post, &base, RenyiOrder::new(1.0 + 1e-4).unwrap()).unwrap();
        let kl = 0.212_547_456_658;
        assert!(lo <= kl && kl <= hi, "{lo} <= {kl} <= {hi}");
        assert!((0.5 * (lo + hi) - kl).abs() < 1e-4);
    }

    #[test]
    fn geometric_mc_agrees_with_closed_conjugate() {
        for (a, stream) in [(0.5, 10), (2.0, 11)] {
            let req = beta_request((1.0, 3.0), 3.0, Geometric, 0.5, a, 300_000, stream);
            let closed = renyi_closed_conjugate(
                &req.contaminated_posterior().unwrap(),
                &PosteriorRep::Conjugate(req.base_params().unwrap()),
                req.order,
            )
            .unwrap();
            let mc = renyi_mc(&req).unwrap();
            assert!(
                (mc.value - closed).abs() < 4.0 * mc.std_error,
                "a={a}: mc {} +- {} vs closed {closed}",
                mc.value,
                mc.std_error
            );
        }
    }

    #[test]
    fn dispatch_checks_order() {
        let req = beta_request((1.0, 1.0), 3.0, Geometric, 0.5, 1.0, 1000, 0);
        assert!(renyi_mc(&req).is_err());
        let req = beta_request((1.0, 1.0), 3.0, Geometric, 0.5, 2.0, 1000, 0);
        assert!(kl_mc(&req).is_err());
    }

    #[test]
    fn quadrature_rejects_non_beta() {
        let req = DivergenceRequest::new(
            PriorSpec::normal_location(0.5, 1.0).unwrap(),
            ContaminationSetup::new(3.0, EpsilonLinear, 0.5).unwrap(),
            RenyiOrder::new(0.5).unwrap(),
            SufficientStats::normal(4.1905, 20).unwrap(),
            1000,
            SeededStream::new(0, 0),
        )
        .unwrap();
        assert!(matches!(renyi_quadrature(&req), Err(Error::FamilyMismatch { .. })));
    }

    #[test]
    fn normal_family_mc_agrees_with_closed_conjugate_geometric() {
        let prior = PriorSpec::normal_location(0.5, 1.0).unwrap();
        let req = DivergenceRequest::new(
            prior,
            ContaminationSetup::new(3.0, Geometric, 0.5).unwrap(),
            RenyiOrder::new(2.0).unwrap(),
            SufficientStats::normal(4.1905, 20).unwrap(),
            300_000,
            SeededStream::new(99, 5),
        )
        .unwrap();
        let closed = renyi_closed_conjugate(
            &req.contaminated_posterior().unwrap(),
            &PosteriorRep::Conjugate(req.base_params().unwrap()),
            req.order,
        )
        .unwrap();
        let mc = renyi_mc(&req).unwrap();
        assert!((mc.value - closed).abs() < 4.0 * mc.std_error);
    }

    #[test]
    fn dirichlet_family_mc_agrees_with_closed_conjugate() {
        let prior = PriorSpec::dirichlet(vec![1.0; 4]).unwrap();
        let req = DivergenceRequest::new(
            prior,
            ContaminationSetup::new(3.0, Geometric, 0.5).unwrap(),
            RenyiOrder::new(0.5).unwrap(),
            SufficientStats::multinomial(vec![6, 4, 5, 5]).unwrap(),
            200_000,
            SeededStream::new(99, 6),
        )
        .unwrap();
        let closed = renyi_closed_conjugate(
            &req.contaminated_posterior().unwrap(),
            &PosteriorRep::Conjugate(req.base_params().unwrap()),
            req.order,
        )
        .unwrap();
        let mc = renyi_mc(&req).unwrap();
        assert!((mc.value - closed).abs() < 4.0 * mc.std_error);
    }
}

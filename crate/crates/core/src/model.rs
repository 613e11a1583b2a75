//! Conjugate model families, sufficient statistics, contaminated priors,
//! posterior updates, and log-density evaluation.
//!
//! Three families are supported: Bernoulli data with a Beta prior,
//! multinomial counts with a Dirichlet prior, and unit-variance normal data
//! with a normal prior on the location. The contaminant is always the
//! scale-c member of the same family, so posterior updates stay conjugate
//! (or, for linear contamination, a two-component conjugate mixture).

#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::special::{
    ln_beta, ln_multivariate_beta, log_sum_exp, require_finite, require_positive,
    require_unit_interval,
};

/// Tolerance for the simplex-sum check on Dirichlet parameter points.
const SIMPLEX_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Beta,
    Dirichlet,
    NormalLocation,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Beta => "beta",
            Family::Dirichlet => "dirichlet",
            Family::NormalLocation => "normal-location",
        }
    }
}

/// Divergence order a > 0, with a = 1 marking the KL limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenyiOrder {
    value: f64,
}

impl RenyiOrder {
    pub fn new(value: f64) -> Result<Self> {
        require_positive(value, "Renyi order a")?;
        Ok(Self { value })
    }

    /// The a -> 1 (Kullback-Leibler) limit.
    pub fn kl() -> Self {
        Self { value: 1.0 }
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn is_kl_limit(self) -> bool {
        self.value == 1.0
    }
}

/// Which contamination neighborhood the contaminated prior lives in:
/// linear mixing `(1-eps) pi0 + eps q` or normalized geometric mixing
/// `pi0^(1-eps) q^eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContaminationClass {
    EpsilonLinear,
    Geometric,
}

impl ContaminationClass {
    pub fn name(self) -> &'static str {
        match self {
            ContaminationClass::EpsilonLinear => "epsilon-linear",
            ContaminationClass::Geometric => "geometric",
        }
    }
}

/// Contaminant scale, contamination class, and contamination weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContaminationSetup {
    pub scale: f64,
    pub class: ContaminationClass,
    pub epsilon: f64,
}

impl ContaminationSetup {
    pub fn new(scale: f64, class: ContaminationClass, epsilon: f64) -> Result<Self> {
        require_positive(scale, "contaminant scale c")?;
        require_unit_interval(epsilon, "contamination weight epsilon")?;
        Ok(Self { scale, class, epsilon })
    }
}

/// Hyperparameters of a conjugate prior (and, after updating, of a
/// conjugate posterior member).
#[derive(Debug, Clone, PartialEq)]
pub enum PriorSpec {
    Beta { alpha: f64, beta: f64 },
    Dirichlet { concentration: Vec<f64> },
    NormalLocation { location: f64, variance: f64 },
}

impl PriorSpec {
    pub fn beta(alpha: f64, beta: f64) -> Result<Self> {
        require_positive(alpha, "Beta alpha")?;
        require_positive(beta, "Beta beta")?;
        Ok(Self::Beta { alpha, beta })
    }

    pub fn dirichlet(concentration: Vec<f64>) -> Result<Self> {
        if concentration.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "Dirichlet needs k >= 2 components, got {}",
                concentration.len()
            )));
        }
        for &a in &concentration {
            require_positive(a, "Dirichlet concentration")?;
        }
        Ok(Self::Dirichlet { concentration })
    }

    pub fn normal_location(location: f64, variance: f64) -> Result<Self> {
        require_finite(location, "Normal location")?;
        require_positive(variance, "Normal variance")?;
        Ok(Self::NormalLocation { location, variance })
    }

    pub fn family(&self) -> Family {
        match self {
            PriorSpec::Beta { .. } => Family::Beta,
            PriorSpec::Dirichlet { .. } => Family::Dirichlet,
            PriorSpec::NormalLocation { .. } => Family::NormalLocation,
        }
    }

    /// Log density at an interior parameter point.
    pub fn log_density(&self, theta: &Theta<'_>) -> Result<f64> {
        match (self, theta) {
            (PriorSpec::Beta { alpha, beta }, Theta::Scalar(x)) => {
                check_open_unit(*x)?;
                Ok((alpha - 1.0) * x.ln() + (beta - 1.0) * (-x).ln_1p() - ln_beta(*alpha, *beta))
            }
            (PriorSpec::Dirichlet { concentration }, Theta::Simplex(xs)) => {
                check_simplex(xs, concentration.len())?;
                let mut acc = -ln_multivariate_beta(concentration);
                for (&a, &x) in concentration.iter().zip(xs.iter()) {
                    acc += (a - 1.0) * x.ln();
                }
                Ok(acc)
            }
            (PriorSpec::NormalLocation { location, variance }, Theta::Scalar(x)) => {
                require_finite(*x, "Normal parameter point")
                    .map_err(|_| Error::SupportViolation(format!("non-finite point {x}")))?;
                let d = x - location;
                Ok(-0.5 * ((2.0 * core::f64::consts::PI * variance).ln() + d * d / variance))
            }
            _ => Err(Error::SupportViolation(
                "parameter point shape does not match the family".into(),
            )),
        }
    }
}

/// Parameter point: a scalar for Beta/Normal, a full probability vector
/// (last coordinate explicit) for Dirichlet.
#[derive(Debug, Clone, Copy)]
pub enum Theta<'a> {
    Scalar(f64),
    Simplex(&'a [f64]),
}

/// Canonical data summaries: the conjugate posterior depends on the sample
/// only through these.
#[derive(Debug, Clone, PartialEq)]
pub enum SufficientStats {
    /// t ones in n Bernoulli trials.
    Bernoulli { successes: u64, trials: u64 },
    /// Multinomial category counts; the total is their sum.
    Multinomial { counts: Vec<u64> },
    /// Sample mean of n unit-variance normal observations.
    Normal { mean: f64, size: u64 },
}

impl SufficientStats {
    pub fn bernoulli(successes: u64, trials: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidParameter("Bernoulli trials must be >= 1".into()));
        }
        if successes > trials {
            return Err(Error::InvalidParameter(format!(
                "Bernoulli successes {successes} exceed trials {trials}"
            )));
        }
        Ok(Self::Bernoulli { successes, trials })
    }

    pub fn multinomial(counts: Vec<u64>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "Multinomial needs k >= 2 categories, got {}",
                counts.len()
            )));
        }
        Ok(Self::Multinomial { counts })
    }

    pub fn normal(mean: f64, size: u64) -> Result<Self> {
        require_finite(mean, "Normal sample mean")?;
        if size == 0 {
            return Err(Error::InvalidParameter("Normal sample size must be >= 1".into()));
        }
        Ok(Self::Normal { mean, size })
    }

    pub fn family(&self) -> Family {
        match self {
            SufficientStats::Bernoulli { .. } => Family::Beta,
            SufficientStats::Multinomial { .. } => Family::Dirichlet,
            SufficientStats::Normal { .. } => Family::NormalLocation,
        }
    }
}

/// Exact posterior representation: a single conjugate member, or a
/// two-component conjugate mixture with weight `weight` on the component
/// updated from the elicited prior.
#[derive(Debug, Clone, PartialEq)]
pub enum PosteriorRep {
    Conjugate(PriorSpec),
    Mixture {
        weight: f64,
        primary: PriorSpec,
        secondary: PriorSpec,
    },
}

impl PosteriorRep {
    /// The conjugate member, when the posterior is not a mixture.
    pub fn conjugate(&self) -> Option<&PriorSpec> {
        match self {
            PosteriorRep::Conjugate(p) => Some(p),
            PosteriorRep::Mixture { .. } => None,
        }
    }

    pub fn family(&self) -> Family {
        match self {
            PosteriorRep::Conjugate(p) => p.family(),
            PosteriorRep::Mixture { primary, .. } => primary.family(),
        }
    }
}

fn check_open_unit(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::SupportViolation(format!("point {x} is outside (0, 1)")))
    }
}

fn check_simplex(xs: &[f64], k: usize) -> Result<()> {
    if xs.len() != k {
        return Err(Error::SupportViolation(format!(
            "simplex point has {} coordinates, family has {k}",
            xs.len()
        )));
    }
    let mut sum = 0.0;
    for &x in xs {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::SupportViolation(format!(
                "simplex coordinate {x} is outside (0, 1)"
            )));
        }
        sum += x;
    }
    if (sum - 1.0).abs() > SIMPLEX_SUM_TOL {
        return Err(Error::SupportViolation(format!("simplex coordinates sum to {sum}, not 1")));
    }
    Ok(())
}

fn check_same_family(a: Family, b: Family) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FamilyMismatch { expected: a.name(), got: b.name() })
    }
}

/// Conjugate posterior of `prior` given `stats`.
pub fn base_posterior(prior: &PriorSpec, stats: &SufficientStats) -> Result<PosteriorRep> {
    check_same_family(prior.family(), stats.family())?;
    let updated = match (prior, stats) {
        (PriorSpec::Beta { alpha, beta }, SufficientStats::Bernoulli { successes, trials }) => {
            PriorSpec::Beta {
                alpha: alpha + *successes as f64,
                beta: beta + (*trials - *successes) as f64,
            }
        }
        (PriorSpec::Dirichlet { concentration }, SufficientStats::Multinomial { counts }) => {
            if concentration.len() != counts.len() {
                return Err(Error::InvalidParameter(format!(
                    "Dirichlet has {} components but counts have {}",
                    concentration.len(),
                    counts.len()
                )));
            }
            PriorSpec::Dirichlet {
                concentration: concentration
                    .iter()
                    .zip(counts)
                    .map(|(&a, &x)| a + x as f64)
                    .collect(),
            }
        }
        (PriorSpec::NormalLocation { location, variance }, SufficientStats::Normal { mean, size }) => {
            let precision = 1.0 / variance + *size as f64;
            PriorSpec::NormalLocation {
                location: (location / variance + *size as f64 * mean) / precision,
                variance: 1.0 / precision,
            }
        }
        _ => unreachable!("family checked above"),
    };
    Ok(PosteriorRep::Conjugate(updated))
}

/// The scale-c contaminant of `prior`: Beta(c a, c b), Dirichlet(c a_i), or
/// Normal(c theta0, sigma0^2) (the normal contaminant shifts the mean only).
pub fn contaminant_of(prior: &PriorSpec, scale: f64) -> Result<PriorSpec> {
    require_positive(scale, "contaminant scale c")?;
    Ok(match prior {
        PriorSpec::Beta { alpha, beta } => PriorSpec::Beta { alpha: scale * alpha, beta: scale * beta },
        PriorSpec::Dirichlet { concentration } => PriorSpec::Dirichlet {
            concentration: concentration.iter().map(|&a| scale * a).collect(),
        },
        PriorSpec::NormalLocation { location, variance } => {
            PriorSpec::NormalLocation { location: scale * location, variance: *variance }
        }
    })
}

/// ln q(theta) - ln pi0(theta) at an interior point.
///
/// Computed term-by-term from parameter differences, so a contaminant with
/// identical parameters gives exactly 0 rather than a rounding residue.
pub fn log_density_ratio(prior: &PriorSpec, contaminant: &PriorSpec, theta: &Theta<'_>) -> Result<f64> {
    check_same_family(prior.family(), contaminant.family())?;
    match (prior, contaminant, theta) {
        (
            PriorSpec::Beta { alpha: a0, beta: b0 },
            PriorSpec::Beta { alpha: a1, beta: b1 },
            Theta::Scalar(x),
        ) => {
            check_open_unit(*x)?;
            Ok(ln_beta(*a0, *b0) - ln_beta(*a1, *b1)
                + (a1 - a0) * x.ln()
                + (b1 - b0) * (-x).ln_1p())
        }
        (
            PriorSpec::Dirichlet { concentration: a0 },
            PriorSpec::Dirichlet { concentration: a1 },
            Theta::Simplex(xs),
        ) => {
            if a0.len() != a1.len() {
                return Err(Error::InvalidParameter(
                    "contaminant dimension differs from the prior".into(),
                ));
            }
            check_simplex(xs, a0.len())?;
            let mut acc = ln_multivariate_beta(a0) - ln_multivariate_beta(a1);
            for ((&p, &q), &x) in a0.iter().zip(a1.iter()).zip(xs.iter()) {
                acc += (q - p) * x.ln();
            }
            Ok(acc)
        }
        (
            PriorSpec::NormalLocation { location: m0, variance: v0 },
            PriorSpec::NormalLocation { location: m1, variance: v1 },
            Theta::Scalar(x),
        ) => {
            if !x.is_finite() {
                return Err(Error::SupportViolation(format!("non-finite point {x}")));
            }
            if v0 == v1 {
                // equal variances reduce to an exact affine form
                Ok((m1 - m0) * (2.0 * x - m0 - m1) / (2.0 * v0))
            } else {
                let d0 = x - m0;
                let d1 = x - m1;
                Ok(0.5 * ((v0 / v1).ln() + d0 * d0 / v0 - d1 * d1 / v1))
            }
        }
        _ => Err(Error::SupportViolation(
            "parameter point shape does not match the family".into(),
        )),
    }
}

/// Posterior under the geometric contamination: blending prior exponents is
/// exact, so the result is a single conjugate member and the normalizing
/// constants never need to be evaluated.
pub fn geometric_posterior(
    prior: &PriorSpec,
    contaminant: &PriorSpec,
    epsilon: f64,
    stats: &SufficientStats,
) -> Result<PosteriorRep> {
    check_same_family(prior.family(), contaminant.family())?;
    require_unit_interval(epsilon, "contamination weight epsilon")?;
    // Degenerate blends return the endpoint parameters untouched, so a
    // unit-scale contaminant reproduces the base posterior exactly.
    if epsilon == 0.0 || prior == contaminant {
        return base_posterior(prior, stats);
    }
    if epsilon == 1.0 {
        return base_posterior(contaminant, stats);
    }
    let blended = match (prior, contaminant) {
        (PriorSpec::Beta { alpha: a0, beta: b0 }, PriorSpec::Beta { alpha: a1, beta: b1 }) => {
            PriorSpec::Beta {
                alpha: (1.0 - epsilon) * a0 + epsilon * a1,
                beta: (1.0 - epsilon) * b0 + epsilon * b1,
            }
        }
        (
            PriorSpec::Dirichlet { concentration: a0 },
            PriorSpec::Dirichlet { concentration: a1 },
        ) => {
            if a0.len() != a1.len() {
                return Err(Error::InvalidParameter(
                    "contaminant dimension differs from the prior".into(),
                ));
            }
            PriorSpec::Dirichlet {
                concentration: a0
                    .iter()
                    .zip(a1.iter())
                    .map(|(&p, &q)| (1.0 - epsilon) * p + epsilon * q)
                    .collect(),
            }
        }
        (
            PriorSpec::NormalLocation { location: m0, variance: v0 },
            PriorSpec::NormalLocation { location: m1, variance: v1 },
        ) => {
            if v0 == v1 {
                PriorSpec::NormalLocation {
                    location: (1.0 - epsilon) * m0 + epsilon * m1,
                    variance: *v0,
                }
            } else {
                // exp(-(1-e)(t-m0)^2/2v0 - e(t-m1)^2/2v1) is Gaussian with
                // blended precision
                let precision = (1.0 - epsilon) / v0 + epsilon / v1;
                PriorSpec::NormalLocation {
                    location: ((1.0 - epsilon) * m0 / v0 + epsilon * m1 / v1) / precision,
                    variance: 1.0 / precision,
                }
            }
        }
        _ => unreachable!("family checked above"),
    };
    base_posterior(&blended, stats)
}

/// Log prior-predictive mass of the sufficient statistics, up to an additive
/// constant shared by every prior of the family (binomial/multinomial
/// coefficients and the residual factor of the normal sample cancel in the
/// mixture weight, which is the only consumer).
fn log_prior_predictive(prior: &PriorSpec, stats: &SufficientStats) -> Result<f64> {
    match (prior, stats) {
        (PriorSpec::Beta { alpha, beta }, SufficientStats::Bernoulli { successes, trials }) => {
            let t = *successes as f64;
            let n = *trials as f64;
            Ok(ln_beta(alpha + t, beta + n - t) - ln_beta(*alpha, *beta))
        }
        (PriorSpec::Dirichlet { concentration }, SufficientStats::Multinomial { counts }) => {
            let updated: Vec<f64> = concentration
                .iter()
                .zip(counts)
                .map(|(&a, &x)| a + x as f64)
                .collect();
            Ok(ln_multivariate_beta(&updated) - ln_multivariate_beta(concentration))
        }
        (PriorSpec::NormalLocation { location, variance }, SufficientStats::Normal { mean, size }) => {
            // marginal of the sample mean: N(location, variance + 1/n)
            let v = variance + 1.0 / *size as f64;
            let d = mean - location;
            Ok(-0.5 * ((2.0 * core::f64::consts::PI * v).ln() + d * d / v))
        }
        _ => Err(Error::FamilyMismatch {
            expected: prior.family().name(),
            got: stats.family().name(),
        }),
    }
}

/// Posterior under linear contamination: a two-component conjugate mixture
/// with weight lambda(x) = (1-eps) m(x|pi0) / [(1-eps) m(x|pi0) + eps m(x|q)].
///
/// Degenerate cases (eps in {0, 1}, or contaminant identical to the prior)
/// collapse to the single conjugate member before any log-space arithmetic.
pub fn epsilon_posterior(
    prior: &PriorSpec,
    contaminant: &PriorSpec,
    epsilon: f64,
    stats: &SufficientStats,
) -> Result<PosteriorRep> {
    check_same_family(prior.family(), contaminant.family())?;
    require_unit_interval(epsilon, "contamination weight epsilon")?;
    if epsilon == 0.0 || prior == contaminant {
        return base_posterior(prior, stats);
    }
    if epsilon == 1.0 {
        return base_posterior(contaminant, stats);
    }
    let lm0 = log_prior_predictive(prior, stats)?;
    let lmq = log_prior_predictive(contaminant, stats)?;
    let weight = 1.0 / (1.0 + (epsilon / (1.0 - epsilon)) * (lmq - lm0).exp());
    let primary = match base_posterior(prior, stats)? {
        PosteriorRep::Conjugate(p) => p,
        _ => unreachable!(),
    };
    let secondary = match base_posterior(contaminant, stats)? {
        PosteriorRep::Conjugate(p) => p,
        _ => unreachable!(),
    };
    Ok(PosteriorRep::Mixture { weight, primary, secondary })
}

/// Log density of a posterior representation at an interior point.
pub fn log_posterior_density(post: &PosteriorRep, theta: &Theta<'_>) -> Result<f64> {
    match post {
        PosteriorRep::Conjugate(p) => p.log_density(theta),
        PosteriorRep::Mixture { weight, primary, secondary } => {
            let l1 = primary.log_density(theta)?;
            let l2 = secondary.log_density(theta)?;
            if *weight >= 1.0 {
                return Ok(l1);
            }
            if *weight <= 0.0 {
                return Ok(l2);
            }
            Ok(log_sum_exp(weight.ln() + l1, (1.0 - weight).ln() + l2))
        }
    }
}

/// Precompiled log-density ratio `ln p1(theta) - ln p0(theta)` between two
/// members of one family, for tight Monte Carlo loops. Points are assumed
/// interior (samplers only produce interior points).
#[derive(Debug, Clone)]
pub(crate) enum RatioEval {
    Beta { dnorm: f64, da: f64, db: f64 },
    Dirichlet { dnorm: f64, dconc: Vec<f64> },
    NormalEqualVar { m0: f64, m1: f64, half_inv_v: f64 },
    Normal { m0: f64, v0: f64, m1: f64, v1: f64, half_ln_v0_v1: f64 },
}

impl RatioEval {
    pub(crate) fn new(p0: &PriorSpec, p1: &PriorSpec) -> Result<Self> {
        check_same_family(p0.family(), p1.family())?;
        Ok(match (p0, p1) {
            (PriorSpec::Beta { alpha: a0, beta: b0 }, PriorSpec::Beta { alpha: a1, beta: b1 }) => {
                RatioEval::Beta {
                    dnorm: ln_beta(*a0, *b0) - ln_beta(*a1, *b1),
                    da: a1 - a0,
                    db: b1 - b0,
                }
            }
            (
                PriorSpec::Dirichlet { concentration: a0 },
                PriorSpec::Dirichlet { concentration: a1 },
            ) => {
                if a0.len() != a1.len() {
                    return Err(Error::InvalidParameter(
                        "dimension mismatch between Dirichlet members".into(),
                    ));
                }
                RatioEval::Dirichlet {
                    dnorm: ln_multivariate_beta(a0) - ln_multivariate_beta(a1),
                    dconc: a0.iter().zip(a1.iter()).map(|(&p, &q)| q - p).collect(),
                }
            }
            (
                PriorSpec::NormalLocation { location: m0, variance: v0 },
                PriorSpec::NormalLocation { location: m1, variance: v1 },
            ) => {
                if v0 == v1 {
                    RatioEval::NormalEqualVar { m0: *m0, m1: *m1, half_inv_v: 0.5 / v0 }
                } else {
                    RatioEval::Normal {
                        m0: *m0,
                        v0: *v0,
                        m1: *m1,
                        v1: *v1,
                        half_ln_v0_v1: 0.5 * (v0 / v1).ln(),
                    }
                }
            }
            _ => unreachable!("family checked above"),
        })
    }

    #[inline]
    pub(crate) fn eval_scalar(&self, x: f64) -> f64 {
        match self {
            RatioEval::Beta { dnorm, da, db } => dnorm + da * x.ln() + db * (-x).ln_1p(),
            RatioEval::NormalEqualVar { m0, m1, half_inv_v } => {
                (m1 - m0) * (2.0 * x - m0 - m1) * half_inv_v
            }
            RatioEval::Normal { m0, v0, m1, v1, half_ln_v0_v1 } => {
                let d0 = x - m0;
                let d1 = x - m1;
                half_ln_v0_v1 + 0.5 * (d0 * d0 / v0 - d1 * d1 / v1)
            }
            RatioEval::Dirichlet { .. } => unreachable!("scalar point for a simplex family"),
        }
    }

    #[inline]
    pub(crate) fn eval_simplex(&self, xs: &[f64]) -> f64 {
        match self {
            RatioEval::Dirichlet { dnorm, dconc } => {
                let mut acc = *dnorm;
                for (&d, &x) in dconc.iter().zip(xs) {
                    acc += d * x.ln();
                }
                acc
            }
            _ => unreachable!("simplex point for a scalar family"),
        }
    }
}

/// Log-density difference `ln pi(theta) - ln pi0(theta)` between a posterior
/// representation and a conjugate base posterior, precompiled for Monte
/// Carlo loops.
#[derive(Debug, Clone)]
pub(crate) enum PosteriorRatioEval {
    Conjugate(RatioEval),
    Mixture { ln_w: f64, ln_1mw: f64, first: RatioEval, second: RatioEval },
}

impl PosteriorRatioEval {
    pub(crate) fn new(post: &PosteriorRep, base: &PriorSpec) -> Result<Self> {
        Ok(match post {
            PosteriorRep::Conjugate(p) => PosteriorRatioEval::Conjugate(RatioEval::new(base, p)?),
            PosteriorRep::Mixture { weight, primary, secondary } => PosteriorRatioEval::Mixture {
                ln_w: weight.ln(),
                ln_1mw: (1.0 - weight).ln(),
                first: RatioEval::new(base, primary)?,
                second: RatioEval::new(base, secondary)?,
            },
        })
    }

    #[inline]
    pub(crate) fn eval_scalar(&self, x: f64) -> f64 {
        match self {
            PosteriorRatioEval::Conjugate(r) => r.eval_scalar(x),
            PosteriorRatioEval::Mixture { ln_w, ln_1mw, first, second } => {
                log_sum_exp(ln_w + first.eval_scalar(x), ln_1mw + second.eval_scalar(x))
            }
        }
    }

    #[inline]
    pub(crate) fn eval_simplex(&self, xs: &[f64]) -> f64 {
        match self {
            PosteriorRatioEval::Conjugate(r) => r.eval_simplex(xs),
            PosteriorRatioEval::Mixture { ln_w, ln_1mw, first, second } => {
                log_sum_exp(ln_w + first.eval_simplex(xs), ln_1mw + second.eval_simplex(xs))
            }
        }
    }
}

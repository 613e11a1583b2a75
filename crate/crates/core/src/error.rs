use alloc::string::String;

/// Errors shared across the model, estimator, and calibration layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A hyperparameter or request field violates its domain constraint.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two model objects belong to different conjugate families.
    #[error("family mismatch: expected {expected}, got {got}")]
    FamilyMismatch {
        expected: &'static str,
        got: &'static str,
    },

    /// A parameter point lies on or outside the support of the density.
    #[error("parameter point outside the support: {0}")]
    SupportViolation(String),

    /// A requested ratio moment does not exist (the Monte Carlo estimator
    /// for this configuration has infinite variance).
    #[error("moment does not exist: Beta-function argument {argument} is nonpositive")]
    MomentDoesNotExist { argument: f64 },

    /// The order-a blended parameters left the valid domain, so the
    /// order-a integral diverges.
    #[error("Renyi order too large for this pair: blended parameter {parameter} is nonpositive")]
    RenyiOrderTooLarge { parameter: f64 },

    /// Closed forms of the order-a integral are undefined exactly at the
    /// KL limit; evaluate near a = 1 and interpolate instead.
    #[error("closed form undefined at the a = 1 limit")]
    UndefinedAtKlLimit,

    /// Every sampled log weight was -inf, i.e. the posteriors share no support.
    #[error("disjoint supports: all sampled log weights were -inf")]
    DisjointSupport,

    /// A closed-form value exceeds the representable f64 range; the natural
    /// log of the value is carried instead.
    #[error("closed-form value overflows f64; ln(value) = {log_value}")]
    ClosedFormOverflow { log_value: f64 },

    /// The quadrature refinement failed to reach the requested tolerance.
    #[error("quadrature did not converge: {evaluations} evaluations, last refinement delta {last_delta:e}")]
    QuadratureDidNotConverge { evaluations: u32, last_delta: f64 },

    /// For a != 1 the coin divergence saturates at ln 2; no p in [0.5, 1]
    /// reproduces a larger distance. Carries the limiting calibration p = 1.
    #[error("calibration saturated: d0 {d0} exceeds ln 2; p -> {p}")]
    CalibrationSaturated { d0: f64, p: f64 },

    /// A fair-vs-biased coin cannot be infinitely far apart at p < 1.
    #[error("calibration inverse undefined: p = 1 at the KL limit has infinite d0")]
    InfiniteDivergence,
}

pub type Result<T> = core::result::Result<T, Error>;

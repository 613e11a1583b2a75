//! Quantifies how sensitive a Bayesian posterior is to the choice of prior.
//!
//! The elicited prior is embedded in a contamination neighborhood — linear
//! mixing `(1-eps) pi0 + eps q` or geometric mixing `pi0^(1-eps) q^eps` with
//! a scale-c contaminant q from the same conjugate family — and the
//! robustness of the inference is summarized by the curvature at eps = 0 of
//! the order-a divergence between the contaminated and base posteriors.
//! Small curvature: the data dominate and the prior choice barely matters.
//!
//! The crate provides:
//!
//! - [`model`]: Beta, Dirichlet, and normal-location conjugate updates,
//!   contaminated posteriors (exact conjugate members or two-component
//!   mixtures), and log densities;
//! - [`sampler`]: seeded, reproducible variate streams (ChaCha-backed, with
//!   cheap independent substreams);
//! - [`curvature`]: Monte Carlo curvature estimators for both contamination
//!   classes plus exact closed forms for the normal family and the
//!   linear-class Beta family;
//! - [`divergence`]: Monte Carlo divergence estimators, the conjugate
//!   closed form, and a quadrature oracle for Beta mixtures;
//! - [`calibration`]: the map from a divergence value to an interpretable
//!   biased-coin probability in [0.5, 1].
//!
//! Everything is pure and deterministic given a [`sampler::SeededStream`];
//! the crate is `no_std`-compatible (with `alloc`) when built without the
//! `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod calibration;
pub mod curvature;
mod error;
pub mod model;
pub mod moments;
pub mod sampler;
pub mod special;

pub mod divergence;

pub use calibration::{calibrate, calibration_inverse, Calibration};
pub use curvature::{
    curvature_beta_epsilon_closed, curvature_epsilon_mc, curvature_geometric_mc,
    curvature_normal_epsilon_closed, curvature_normal_geometric_closed, taylor_consistency,
    CurvatureRequest, Estimate, EstimateMethod, TaylorReport, DEFAULT_DRAWS,
};
pub use divergence::{
    divergence_mc, kl_mc, renyi_closed_conjugate, renyi_mc, renyi_quadrature, DivergenceRequest,
};
pub use error::{Error, Result};
pub use model::{
    base_posterior, contaminant_of, epsilon_posterior, geometric_posterior, log_density_ratio,
    log_posterior_density, ContaminationClass, ContaminationSetup, Family, PosteriorRep, PriorSpec,
    RenyiOrder, SufficientStats, Theta,
};
pub use sampler::{Sampler, SeededStream};

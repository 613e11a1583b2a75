//! Property tests for the model and calibration invariants.

mod common;

use priorcurve_core::*;
use proptest::prelude::*;

fn beta_prior() -> impl Strategy<Value = PriorSpec> {
    (0.1f64..8.0, 0.1f64..8.0).prop_map(|(a, b)| PriorSpec::beta(a, b).unwrap())
}

fn scale() -> impl Strategy<Value = f64> {
    prop_oneof![0.05f64..1.0, 1.0f64..6.0]
}

/// Simpson integral of exp(log_density_ratio) against the prior density over
/// (0, 1); equals 1 because both are normalized densities.
fn beta_ratio_integral(prior: &PriorSpec, contaminant: &PriorSpec) -> f64 {
    let n = 20_000;
    let h = 1.0 / n as f64;
    let f = |x: f64| -> f64 {
        let ld = prior.log_density(&Theta::Scalar(x)).unwrap();
        let lr = log_density_ratio(prior, contaminant, &Theta::Scalar(x)).unwrap();
        (ld + lr).exp()
    };
    let mut acc = 0.0;
    for i in 0..n {
        let a = i as f64 * h;
        let b = a + h;
        let m = 0.5 * (a + b);
        // open-interval endpoints: nudge off 0 and 1
        let fa = if i == 0 { f(1e-12) } else { f(a) };
        let fb = if i == n - 1 { f(1.0 - 1e-12) } else { f(b) };
        acc += (fa + 4.0 * f(m) + fb) * h / 6.0;
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn contaminant_density_is_normalized(
        prior in (1.0f64..8.0, 1.0f64..8.0).prop_map(|(a, b)| PriorSpec::beta(a, b).unwrap()),
        c in 1.0f64..6.0,
    ) {
        // restricted to interior-peaked contaminants (c alpha, c beta >= 1)
        // where Simpson converges; singular contaminants are covered by the
        // Monte Carlo normalization check below
        let q = contaminant_of(&prior, c).unwrap();
        let integral = beta_ratio_integral(&prior, &q);
        prop_assert!((integral - 1.0).abs() < 2e-3, "integral {integral}");
    }

    #[test]
    fn geometric_parameters_are_affine_in_epsilon(
        prior in beta_prior(),
        c in scale(),
        e in 0.0f64..=1.0,
    ) {
        let q = contaminant_of(&prior, c).unwrap();
        let stats = SufficientStats::bernoulli(11, 20).unwrap();
        let params = |eps: f64| match geometric_posterior(&prior, &q, eps, &stats).unwrap() {
            PosteriorRep::Conjugate(PriorSpec::Beta { alpha, beta }) => (alpha, beta),
            _ => unreachable!(),
        };
        let (a0, b0) = params(0.0);
        let (a1, b1) = params(1.0);
        let (ae, be) = params(e);
        prop_assert!((ae - ((1.0 - e) * a0 + e * a1)).abs() < 1e-9);
        prop_assert!((be - ((1.0 - e) * b0 + e * b1)).abs() < 1e-9);
    }

    #[test]
    fn mixture_weight_formula_and_monotonicity(
        prior in beta_prior(),
        c in scale(),
        e in 0.01f64..0.99,
    ) {
        let q = contaminant_of(&prior, c).unwrap();
        let stats = SufficientStats::bernoulli(11, 20).unwrap();
        if c == 1.0 {
            return Ok(());
        }
        let lam = |eps: f64| match epsilon_posterior(&prior, &q, eps, &stats).unwrap() {
            PosteriorRep::Mixture { weight, .. } => weight,
            PosteriorRep::Conjugate(_) => 1.0,
        };
        let w = lam(e);
        prop_assert!(w > 0.0 && w < 1.0);
        // lambda = (1-e) m0 / ((1-e) m0 + e mq): strictly decreasing in e
        let w_hi = lam((e + 0.01).min(0.999));
        prop_assert!(w_hi < w, "lambda must decrease: {w_hi} vs {w}");
    }

    #[test]
    fn unit_scale_collapses_all_posteriors(prior in beta_prior(), e in 0.0f64..=1.0) {
        let q = contaminant_of(&prior, 1.0).unwrap();
        let stats = SufficientStats::bernoulli(7, 19).unwrap();
        let base = base_posterior(&prior, &stats).unwrap();
        prop_assert_eq!(epsilon_posterior(&prior, &q, e, &stats).unwrap(), base.clone());
        prop_assert_eq!(geometric_posterior(&prior, &q, e, &stats).unwrap(), base);
    }

    #[test]
    fn calibration_round_trip_and_monotonicity(
        p in 0.5f64..0.995,
        a in prop_oneof![0.3f64..0.99, 1.01f64..4.0, Just(1.0)],
    ) {
        let order = RenyiOrder::new(a).unwrap();
        let d0 = calibration_inverse(p, order).unwrap();
        prop_assert!(d0 >= 0.0);
        let back = calibrate(d0, order).unwrap();
        prop_assert!((back.p - p).abs() < 1e-10, "p {p} -> d0 {d0} -> {}", back.p);
        // strictly increasing in d0
        if d0 > 1e-6 {
            let lower = calibrate(d0 * 0.5, order).unwrap();
            prop_assert!(lower.p < back.p);
        }
    }

    #[test]
    fn closed_conjugate_divergence_is_nonnegative(
        a1 in 0.5f64..30.0,
        b1 in 0.5f64..30.0,
        a0 in 0.5f64..30.0,
        b0 in 0.5f64..30.0,
        ord in prop_oneof![0.3f64..0.99, 1.01f64..1.8],
    ) {
        let p1 = PosteriorRep::Conjugate(PriorSpec::beta(a1, b1).unwrap());
        let p0 = PosteriorRep::Conjugate(PriorSpec::beta(a0, b0).unwrap());
        let order = RenyiOrder::new(ord).unwrap();
        match renyi_closed_conjugate(&p1, &p0, order) {
            Ok(d) => prop_assert!(d >= -1e-12, "d = {d}"),
            // orders above 1 can push the blend out of the domain
            Err(Error::RenyiOrderTooLarge { .. }) => prop_assert!(ord > 1.0),
            Err(other) => return Err(TestCaseError::fail(format!("{other}"))),
        }
    }
}

#[test]
fn ratio_normalization_by_mc_for_all_families() {
    // E_pi0[q/pi0] = 1 for every family, including c < 1 Beta contaminants
    // whose ratio diverges at the support boundary.
    let cases: Vec<(PriorSpec, f64)> = vec![
        (PriorSpec::beta(1.0, 3.0).unwrap(), 0.5),
        (PriorSpec::beta(0.5, 0.5).unwrap(), 3.0),
        (PriorSpec::dirichlet(vec![1.0, 2.0, 0.5]).unwrap(), 2.0),
        (PriorSpec::normal_location(0.5, 1.0).unwrap(), 3.0),
    ];
    for (prior, c) in cases {
        let q = contaminant_of(&prior, c).unwrap();
        let mut sampler = SeededStream::new(11, 0).sampler();
        let draws = 400_000;
        let mut acc = moments::Moments::new();
        match &prior {
            PriorSpec::Beta { alpha, beta } => {
                for _ in 0..draws {
                    let x = sampler.beta(*alpha, *beta);
                    acc.push(log_density_ratio(&prior, &q, &Theta::Scalar(x)).unwrap().exp());
                }
            }
            PriorSpec::Dirichlet { concentration } => {
                let mut point = vec![0.0; concentration.len()];
                for _ in 0..draws {
                    sampler.dirichlet(concentration, &mut point);
                    acc.push(log_density_ratio(&prior, &q, &Theta::Simplex(&point)).unwrap().exp());
                }
            }
            PriorSpec::NormalLocation { location, variance } => {
                for _ in 0..draws {
                    let x = sampler.normal(*location, *variance);
                    acc.push(log_density_ratio(&prior, &q, &Theta::Scalar(x)).unwrap().exp());
                }
            }
        }
        let se = acc.mean_std_error();
        assert!(
            (acc.mean() - 1.0).abs() < 5.0 * se.max(1e-4),
            "{prior:?} c={c}: mean {} se {se}",
            acc.mean()
        );
    }
}

#[test]
fn divergence_zero_iff_identical_posteriors() {
    // d = 0 exactly when eps = 0 or c = 1, strictly positive otherwise,
    // using the exact routes (closed conjugate for the geometric class,
    // quadrature for the linear class).
    let stats = SufficientStats::bernoulli(11, 20).unwrap();
    for (alpha, beta) in [(1.0, 1.0), (1.0, 3.0)] {
        let prior = PriorSpec::beta(alpha, beta).unwrap();
        for c in [0.5, 1.0, 3.0] {
            for e in [0.0, 0.05, 0.5, 1.0] {
                for class in [ContaminationClass::EpsilonLinear, ContaminationClass::Geometric] {
                    let req = DivergenceRequest::new(
                        prior.clone(),
                        ContaminationSetup::new(c, class, e).unwrap(),
                        RenyiOrder::new(0.5).unwrap(),
                        stats.clone(),
                        1000,
                        SeededStream::new(0, 0),
                    )
                    .unwrap();
                    let d = renyi_quadrature(&req).unwrap();
                    if e == 0.0 || c == 1.0 {
                        assert_eq!(d, 0.0, "expected exact zero at c={c} e={e}");
                    } else {
                        assert!(d > 1e-8, "expected positive d at c={c} e={e} {class:?}, got {d}");
                    }
                }
            }
        }
    }
}

#[test]
fn divergence_monotone_in_epsilon_on_exact_routes() {
    let stats = SufficientStats::bernoulli(11, 20).unwrap();
    for (alpha, beta) in [(0.5, 0.5), (1.0, 1.0), (1.0, 3.0), (3.0, 1.0)] {
        let prior = PriorSpec::beta(alpha, beta).unwrap();
        for c in [0.5, 1.5, 3.0, 5.0] {
            for a in [0.5, 1.0, 2.0] {
                for class in [ContaminationClass::EpsilonLinear, ContaminationClass::Geometric] {
                    let d_at = |e: f64| {
                        let req = DivergenceRequest::new(
                            prior.clone(),
                            ContaminationSetup::new(c, class, e).unwrap(),
                            RenyiOrder::new(a).unwrap(),
                            stats.clone(),
                            1000,
                            SeededStream::new(0, 0),
                        )
                        .unwrap();
                        renyi_quadrature(&req).unwrap()
                    };
                    let (d1, d2, d3) = (d_at(0.05), d_at(0.5), d_at(1.0));
                    assert!(
                        d1 <= d2 + 1e-12 && d2 <= d3 + 1e-12,
                        "({alpha},{beta}) c={c} a={a} {class:?}: {d1} {d2} {d3}"
                    );
                }
            }
        }
    }
}

//! Deterministic, seedable variate generation for Normal, Gamma, Beta, and
//! Dirichlet draws.
//!
//! Streams are keyed by a `(seed, stream_id)` pair backed by ChaCha12, so
//! substreams are cheap, reproducible, and statistically independent.
//! Parallel estimators partition work by `stream_id`; results then do not
//! depend on the number of workers.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use rand_chacha::ChaCha12Rng;
use rand_core::{Rng, SeedableRng};

/// Identifier of a reproducible variate substream.
///
/// The same `(seed, stream_id)` always yields the same variate sequence.
/// Distinct `stream_id`s select independent ChaCha streams under one seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeededStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl SeededStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// Instantiate the stateful sampler for this stream.
    pub fn sampler(self) -> Sampler {
        Sampler::from_stream(self)
    }
}

/// Stateful variate generator over one substream.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha12Rng,
}

impl Sampler {
    pub fn from_stream(stream: SeededStream) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(stream.seed);
        rng.set_stream(stream.stream_id);
        Self { rng }
    }

    /// Uniform draw on the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        loop {
            // 53 random bits; zero is rejected so downstream logs stay finite.
            let u = (self.rng.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0);
            if u > 0.0 {
                return u;
            }
        }
    }

    /// Standard normal draw (Marsaglia polar method).
    fn standard_normal(&mut self) -> f64 {
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                return u * (-2.0 * s.ln() / s).sqrt();
            }
        }
    }

    /// One draw from Normal(mean, variance); `variance` must be positive.
    pub fn normal(&mut self, mean: f64, variance: f64) -> f64 {
        assert!(variance > 0.0, "normal variance must be positive");
        mean + variance.sqrt() * self.standard_normal()
    }

    /// One Gamma(shape, 1) draw via Marsaglia-Tsang acceptance, with the
    /// u^(1/shape) boost for shape < 1.
    pub fn gamma(&mut self, shape: f64) -> f64 {
        assert!(shape > 0.0 && shape.is_finite(), "gamma shape must be positive");
        if shape < 1.0 {
            // Gamma(k) = Gamma(k+1) * U^(1/k); redraw on underflow so the
            // result stays strictly positive.
            loop {
                let g = self.gamma_large(shape + 1.0);
                let x = g * self.uniform().powf(1.0 / shape);
                if x > 0.0 {
                    return x;
                }
            }
        } else {
            self.gamma_large(shape)
        }
    }

    fn gamma_large(&mut self, shape: f64) -> f64 {
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let x = self.standard_normal();
            let t = 1.0 + c * x;
            if t <= 0.0 {
                continue;
            }
            let v = t * t * t;
            let u = self.uniform();
            let x2 = x * x;
            // cheap squeeze first, exact log test second
            if u < 1.0 - 0.0331 * x2 * x2 {
                return d * v;
            }
            if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
                return d * v;
            }
        }
    }

    /// One Beta(alpha, beta) draw strictly inside (0, 1).
    pub fn beta(&mut self, alpha: f64, beta: f64) -> f64 {
        assert!(alpha > 0.0 && beta > 0.0, "beta shapes must be positive");
        // Ratio of two gammas; boundary values (possible in floating point
        // for tiny shapes) are rejected because downstream log densities
        // need interior points.
        loop {
            let x = self.gamma(alpha);
            let y = self.gamma(beta);
            let r = x / (x + y);
            if r > 0.0 && r < 1.0 {
                return r;
            }
        }
    }

    /// One Dirichlet(concentration) draw written into `out`; components are
    /// normalized Gamma(alpha_i, 1) draws and sum to 1.
    pub fn dirichlet(&mut self, concentration: &[f64], out: &mut [f64]) {
        assert!(concentration.len() >= 2, "dirichlet needs at least 2 components");
        assert_eq!(concentration.len(), out.len());
        loop {
            let mut total = 0.0;
            for (o, &a) in out.iter_mut().zip(concentration) {
                let g = self.gamma(a);
                *o = g;
                total += g;
            }
            if total > 0.0 && total.is_finite() {
                let mut ok = true;
                for o in out.iter_mut() {
                    *o /= total;
                    ok &= *o > 0.0 && *o < 1.0;
                }
                if ok {
                    return;
                }
            }
        }
    }
}

//! Single-pass accumulators for central moments and log-mean-exp.
//!
//! The curvature estimators need the variance of samples spanning many
//! orders of magnitude, plus the fourth central moment for a delta-method
//! standard error on that variance. Both accumulators update in one pass
//! and merge associatively, so chunked or parallel accumulation reproduces
//! the sequential result as long as the merge order is fixed.

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Running mean and second-to-fourth central moment sums (Pebay's update).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
    m3: f64,
    m4: f64,
}

impl Moments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        let n0 = self.count as f64;
        self.count += 1;
        let n = self.count as f64;
        let delta = x - self.mean;
        let delta_n = delta / n;
        let delta_n2 = delta_n * delta_n;
        let term1 = delta * delta_n * n0;
        self.mean += delta_n;
        self.m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * self.m2
            - 4.0 * delta_n * self.m3;
        self.m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * self.m2;
        self.m2 += term1;
    }

    /// Combine two accumulators as if their streams were concatenated.
    pub fn merge(&self, other: &Self) -> Self {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let na = self.count as f64;
        let nb = other.count as f64;
        let n = na + nb;
        let d = other.mean - self.mean;
        let d2 = d * d;
        let m2 = self.m2 + other.m2 + d2 * na * nb / n;
        let m3 = self.m3
            + other.m3
            + d2 * d * na * nb * (na - nb) / (n * n)
            + 3.0 * d * (na * other.m2 - nb * self.m2) / n;
        let m4 = self.m4
            + other.m4
            + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n)
            + 6.0 * d2 * (na * na * other.m2 + nb * nb * self.m2) / (n * n)
            + 4.0 * d * (na * other.m3 - nb * self.m3) / n;
        Self {
            count: self.count + other.count,
            mean: (na * self.mean + nb * other.mean) / n,
            m2,
            m3,
            m4,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased (n-1) sample variance.
    pub fn sample_variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count as f64 - 1.0)
        }
    }

    /// Population (1/n) central moments of order 2 and 4.
    pub fn central2(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.m2 / self.count as f64
        }
    }

    pub fn central4(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.m4 / self.count as f64
        }
    }

    /// Delta-method standard error of the sample variance,
    /// sqrt((mu4 - mu2^2) / n).
    pub fn variance_std_error(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let mu2 = self.central2();
        let mu4 = self.central4();
        ((mu4 - mu2 * mu2).max(0.0) / self.count as f64).sqrt()
    }

    /// Standard error of the mean, sqrt(s^2 / n).
    pub fn mean_std_error(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.sample_variance() / self.count as f64).sqrt()
    }

    /// Pearson kurtosis mu4 / mu2^2; 0 for a degenerate (constant) sample.
    pub fn kurtosis(&self) -> f64 {
        let mu2 = self.central2();
        if mu2 == 0.0 {
            0.0
        } else {
            self.central4() / (mu2 * mu2)
        }
    }
}

/// Streaming ln((1/n) sum exp(x_i)) with a running max shift, plus the
/// second moment of the shifted weights for a delta-method standard error.
#[derive(Debug, Clone, Copy)]
pub struct LogMeanExp {
    count: u64,
    shift: f64,
    sum_w: f64,
    sum_w2: f64,
}

impl Default for LogMeanExp {
    fn default() -> Self {
        Self {
            count: 0,
            shift: f64::NEG_INFINITY,
            sum_w: 0.0,
            sum_w2: 0.0,
        }
    }
}

impl LogMeanExp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        if x == f64::NEG_INFINITY {
            return;
        }
        if x > self.shift {
            // Rescale accumulated weights to the new max; old terms shrink,
            // never overflow.
            let scale = (self.shift - x).exp();
            self.sum_w *= scale;
            self.sum_w2 *= scale * scale;
            self.shift = x;
        }
        let w = (x - self.shift).exp();
        self.sum_w += w;
        self.sum_w2 += w * w;
    }

    pub fn merge(&self, other: &Self) -> Self {
        let mut out = *self;
        if other.count == 0 {
            return out;
        }
        out.count += other.count;
        if other.shift == f64::NEG_INFINITY {
            return out;
        }
        if other.shift > out.shift {
            let scale = (out.shift - other.shift).exp();
            out.sum_w = out.sum_w * scale + other.sum_w;
            out.sum_w2 = out.sum_w2 * scale * scale + other.sum_w2;
            out.shift = other.shift;
        } else {
            let scale = (other.shift - out.shift).exp();
            out.sum_w += other.sum_w * scale;
            out.sum_w2 += other.sum_w2 * scale * scale;
        }
        out
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// True iff every pushed value was -inf (or nothing was pushed).
    pub fn is_empty(&self) -> bool {
        self.sum_w == 0.0
    }

    /// ln of the mean of exp(x_i) over all pushed values.
    pub fn value(&self) -> f64 {
        if self.is_empty() {
            return f64::NEG_INFINITY;
        }
        self.shift + (self.sum_w / self.count as f64).ln()
    }

    /// Delta-method standard error of `value()`:
    /// sqrt((E[w^2]/E[w]^2 - 1) / n), invariant under the shift.
    pub fn std_error(&self) -> f64 {
        if self.is_empty() || self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        let mean_w = self.sum_w / n;
        let mean_w2 = self.sum_w2 / n;
        ((mean_w2 / (mean_w * mean_w) - 1.0).max(0.0) / n).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_match_two_pass() {
        let xs = [1.5, -0.3, 2.2, 8.9, 0.0, -4.1, 3.3, 3.3];
        let mut acc = Moments::new();
        for &x in &xs {
            acc.push(x);
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let mu2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        let mu4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
        assert!((acc.mean() - mean).abs() < 1e-12);
        assert!((acc.central2() - mu2).abs() < 1e-12);
        assert!((acc.central4() - mu4).abs() < 1e-10);
    }

    #[test]
    fn moments_merge_equals_sequential() {
        let xs: Vec<f64> = (0..100).map(|i| ((i * 37) % 13) as f64 - 6.0).collect();
        let mut whole = Moments::new();
        for &x in &xs {
            whole.push(x);
        }
        for split in [1, 13, 50, 99] {
            let (a, b) = xs.split_at(split);
            let mut ma = Moments::new();
            let mut mb = Moments::new();
            a.iter().for_each(|&x| ma.push(x));
            b.iter().for_each(|&x| mb.push(x));
            let merged = ma.merge(&mb);
            assert_eq!(merged.count(), whole.count());
            assert!((merged.mean() - whole.mean()).abs() < 1e-12);
            assert!((merged.central2() - whole.central2()).abs() < 1e-10);
            assert!((merged.central4() - whole.central4()).abs() < 1e-8);
        }
    }

    #[test]
    fn constant_stream_is_exactly_degenerate() {
        let mut acc = Moments::new();
        for _ in 0..1000 {
            acc.push(1.0);
        }
        assert_eq!(acc.sample_variance(), 0.0);
        assert_eq!(acc.variance_std_error(), 0.0);
        assert_eq!(acc.kurtosis(), 0.0);
    }

    #[test]
    fn log_mean_exp_against_direct() {
        let xs = [0.2, -1.0, 3.5, 2.2, -7.9];
        let mut acc = LogMeanExp::new();
        xs.iter().for_each(|&x| acc.push(x));
        let direct = (xs.iter().map(|&x| x.exp()).sum::<f64>() / xs.len() as f64).ln();
        assert!((acc.value() - direct).abs() < 1e-12);
    }

    #[test]
    fn log_mean_exp_handles_huge_shifts() {
        let mut acc = LogMeanExp::new();
        for &x in &[1000.0, 1004.0, 998.0] {
            acc.push(x);
        }
        let direct = 1004.0 + ((1.0f64 + (-4.0f64).exp() + (-6.0f64).exp()) / 3.0).ln();
        assert!((acc.value() - direct).abs() < 1e-12);
    }

    #[test]
    fn log_mean_exp_all_neg_inf_is_empty() {
        let mut acc = LogMeanExp::new();
        acc.push(f64::NEG_INFINITY);
        acc.push(f64::NEG_INFINITY);
        assert!(acc.is_empty());
        assert_eq!(acc.value(), f64::NEG_INFINITY);
    }

    #[test]
    fn log_mean_exp_merge_equals_sequential() {
        let xs: Vec<f64> = (0..40).map(|i| (i as f64) * 0.37 - 5.0).collect();
        let mut whole = LogMeanExp::new();
        xs.iter().for_each(|&x| whole.push(x));
        let (a, b) = xs.split_at(17);
        let mut ma = LogMeanExp::new();
        let mut mb = LogMeanExp::new();
        a.iter().for_each(|&x| ma.push(x));
        b.iter().for_each(|&x| mb.push(x));
        let merged = ma.merge(&mb);
        assert!((merged.value() - whole.value()).abs() < 1e-12);
        assert!((merged.std_error() - whole.std_error()).abs() < 1e-12);
    }
}

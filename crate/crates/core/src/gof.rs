//! Goodness of fit: empirical CDFs, Kolmogorov–Smirnov distances and
//! sample summary statistics.

use crate::distributions::SummaryStats;
use crate::error::{Error, Result};

fn sorted_finite(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("empty sample".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("sample contains non-finite values".into()));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Right-continuous empirical distribution function.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn new(values: &[f64]) -> Result<Self> {
        Ok(Self { sorted: sorted_finite(values)? })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of the sample ≤ x.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }
}

pub fn ecdf(values: &[f64]) -> Result<Ecdf> {
    Ecdf::new(values)
}

/// One-sample KS distance sup |F_n − F| against a continuous CDF.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    let sorted = sorted_finite(samples)?;
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        if !f.is_finite() {
            return Err(Error::InvalidArgument(format!("reference cdf not finite at {x}")));
        }
        let upper = (i + 1) as f64 / n;
        let lower = i as f64 / n;
        d = d.max((upper - f).abs()).max((f - lower).abs());
    }
    Ok(d)
}

/// Two-sample KS distance sup |F_a − F_b|.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    let a = sorted_finite(a)?;
    let b = sorted_finite(b)?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Population-moment summary (1/n), with excess kurtosis.
pub fn summary_stats(values: &[f64]) -> Result<SummaryStats> {
    if values.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "summary statistics need at least 2 values, got {}",
            values.len()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("sample contains non-finite values".into()));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let (mut c2, mut c3, mut c4) = (0.0, 0.0, 0.0);
    for &v in values {
        let d = v - mean;
        let d2 = d * d;
        c2 += d2;
        c3 += d2 * d;
        c4 += d2 * d2;
    }
    Ok(SummaryStats::from_central(mean, c2 / n, c3 / n, c4 / n, Some(values.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn normal_cdf(x: f64) -> f64 {
        0.5 * erfc(-x / std::f64::consts::SQRT_2)
    }

    fn erfc(x: f64) -> f64 {
        // Taylor series below 2, Laplace continued fraction above
        if x < 0.0 {
            return 2.0 - erfc(-x);
        }
        if x < 2.0 {
            let mut sum = x;
            let mut term = x;
            let x2 = x * x;
            for k in 1..200 {
                term *= -x2 / k as f64;
                let add = term / (2 * k + 1) as f64;
                sum += add;
                if add.abs() < 1e-17 {
                    break;
                }
            }
            1.0 - 2.0 / std::f64::consts::PI.sqrt() * sum
        } else {
            let mut f = 0.0;
            for k in (1..120).rev() {
                f = (k as f64 / 2.0) / (x + f);
            }
            (-x * x).exp() / std::f64::consts::PI.sqrt() / (x + f)
        }
    }

    #[test]
    fn ecdf_examples() {
        let e = ecdf(&[0.0]).unwrap();
        assert_eq!([e.eval(-1.0), e.eval(0.0), e.eval(1.0)], [0.0, 1.0, 1.0]);
        assert_eq!(ecdf(&[1.0, 1.0]).unwrap().eval(1.0), 1.0);
        assert_eq!(ecdf(&[1.0, 1.0]).unwrap().eval(0.999), 0.0);
        assert_eq!(ecdf(&[1.0, 2.0, 3.0, 4.0]).unwrap().eval(2.5), 0.5);
        assert!(ecdf(&[]).is_err());
    }

    #[test]
    fn ks_examples() {
        // a single point at the median
        let d = ks_distance(&[0.0], normal_cdf).unwrap();
        assert!((d - 0.5).abs() < 1e-12);
        // uniform quantiles (i − 1/2)/n
        let n = 10;
        let xs: Vec<f64> = (1..=n).map(|i| (i as f64 - 0.5) / n as f64).collect();
        let d = ks_distance(&xs, |x| x.clamp(0.0, 1.0)).unwrap();
        assert!((d - 0.05).abs() < 1e-12);
        assert!(ks_distance(&[], normal_cdf).is_err());
    }

    #[test]
    fn ks_invariant_under_monotone_transform() {
        let xs = [-1.3, -0.2, 0.1, 0.7, 2.2, 0.05];
        let d1 = ks_distance(&xs, normal_cdf).unwrap();
        let ys: Vec<f64> = xs.iter().map(|x| x.exp()).collect();
        let d2 = ks_distance(&ys, |y| normal_cdf(y.ln())).unwrap();
        assert!((d1 - d2).abs() < 1e-14);
    }

    #[test]
    fn ks_of_true_samples_within_envelope() {
        let n = 500;
        let mut ds = Vec::new();
        for rep in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + rep);
            let xs: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            ds.push(ks_distance(&xs, normal_cdf).unwrap());
        }
        ds.sort_by(f64::total_cmp);
        assert!(ds[98] <= 1.63 / (n as f64).sqrt(), "99th percentile {}", ds[98]);
    }

    #[test]
    fn two_sample_ks() {
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(ks_two_sample(&[0.0, 1.0], &[2.0, 3.0]).unwrap(), 1.0);
        assert!((ks_two_sample(&[0.0, 2.0], &[1.0, 3.0]).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn summary_examples() {
        let s = summary_stats(&[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(s.mean, 0.0);
        assert!((s.sd - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(s.skewness, 0.0);
        assert!((s.excess_kurtosis + 1.5).abs() < 1e-12);
        assert_eq!(s.n, Some(3));

        let c = summary_stats(&[2.5; 10]).unwrap();
        assert!(c.degenerate);
        assert_eq!(c.sd, 0.0);

        assert!(summary_stats(&[1.0]).is_err());
    }

    #[test]
    fn normal_higher_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
        let xs: Vec<f64> = (0..1_000_000).map(|_| StandardNormal.sample(&mut rng)).collect();
        let s = summary_stats(&xs).unwrap();
        assert!(s.skewness.abs() < 0.02 && s.excess_kurtosis.abs() < 0.02, "{s:?}");
    }

    proptest! {
        #[test]
        fn summary_equivariance(
            xs in proptest::collection::vec(-100.0f64..100.0, 3..50),
            shift in -50.0f64..50.0,
            scale in 0.1f64..10.0,
        ) {
            let base = summary_stats(&xs).unwrap();
            prop_assume!(!base.degenerate);
            let moved: Vec<f64> = xs.iter().map(|x| scale * x + shift).collect();
            let s = summary_stats(&moved).unwrap();
            prop_assert!((s.mean - (scale * base.mean + shift)).abs() <= 1e-9 * (1.0 + s.mean.abs()));
            prop_assert!((s.sd - scale * base.sd).abs() <= 1e-9 * s.sd.max(1.0));
            prop_assert!((s.skewness - base.skewness).abs() <= 1e-6);
        }
    }
}

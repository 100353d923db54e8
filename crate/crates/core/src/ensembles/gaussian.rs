use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

use super::eigen::{tridiagonalize_hermitian, tridiagonalize_symmetric, SymTridiagonal};
use super::rng::par_samples;
use super::{require, Model, SampleSet};
use crate::distributions::Beta;
use crate::error::{Error, Result};

/// How λ_max of a Gaussian ensemble is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenMethod {
    /// Dense matrix, Householder tridiagonalisation, Sturm bisection.
    #[default]
    Dense,
    /// Tridiagonal β-ensemble model with the same eigenvalue law (O(N²)).
    Tridiagonal,
}

/// Entry law of a real symmetric Wigner matrix (mean 0, variance 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryLaw {
    Rademacher,
    /// Uniform on [−√3, √3].
    Uniform,
}

impl EntryLaw {
    fn draw(self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            EntryLaw::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            EntryLaw::Uniform => rng.random_range(-3f64.sqrt()..3f64.sqrt()),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EntryLaw::Rademacher => "rademacher",
            EntryLaw::Uniform => "uniform",
        }
    }
}

impl std::str::FromStr for EntryLaw {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rademacher" => Ok(EntryLaw::Rademacher),
            "uniform" => Ok(EntryLaw::Uniform),
            _ => Err(Error::InvalidArgument(format!("unknown entry law '{s}'"))),
        }
    }
}

/// Edge scaling s = (λ − 2σ√N)·N^{1/6}/σ.
///
/// For β = 4, `n` counts quaternion entries and the fluctuation factor uses
/// the dimension 2N of the complex embedding, s = (λ − 2σ√N)·(2N)^{1/6}/σ,
/// which is the argument convention of [`crate::F4Convention::Scaled`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingSpec {
    pub sigma: f64,
    pub n: usize,
    pub beta: Beta,
}

impl ScalingSpec {
    pub fn new(sigma: f64, n: usize, beta: Beta) -> Result<Self> {
        let spec = Self { sigma, n, beta };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidArgument(format!("sigma must be positive, got {}", self.sigma)));
        }
        require(self.n >= 1, "N must be at least 1")
    }

    fn fluctuation_dim(&self) -> f64 {
        match self.beta {
            Beta::Four => 2.0 * self.n as f64,
            _ => self.n as f64,
        }
    }

    pub fn scale(&self, lambda: f64) -> f64 {
        let edge = 2.0 * self.sigma * (self.n as f64).sqrt();
        (lambda - edge) * self.fluctuation_dim().powf(1.0 / 6.0) / self.sigma
    }

    pub fn unscale(&self, s: f64) -> f64 {
        let edge = 2.0 * self.sigma * (self.n as f64).sqrt();
        edge + self.sigma * s / self.fluctuation_dim().powf(1.0 / 6.0)
    }
}

/// Moves `raw.values` into `raw` and replaces them by the edge-scaled
/// statistics.
pub fn center_scale(raw: &SampleSet, spec: &ScalingSpec) -> Result<SampleSet> {
    spec.validate()?;
    require(!raw.values.is_empty(), "no values to scale")?;
    let unscaled = raw.raw_or_values().to_vec();
    let mut out = raw.clone();
    out.values = unscaled.iter().map(|&l| spec.scale(l)).collect();
    out.raw = Some(unscaled);
    out.params.insert("sigma".into(), spec.sigma.into());
    Ok(out)
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// GOE: off-diagonal N(0,1), diagonal N(0,2), i.e. (G + Gᵀ)/√2.
pub(crate) fn goe_matrix(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        a[i * n + i] = std::f64::consts::SQRT_2 * normal(rng);
        for j in i + 1..n {
            let v = normal(rng);
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    a
}

/// GUE: off-diagonal (x + iy)/√2, diagonal N(0,1).
pub(crate) fn gue_matrix(n: usize, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    let mut re = vec![0.0; n * n];
    let mut im = vec![0.0; n * n];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        re[i * n + i] = normal(rng);
        for j in i + 1..n {
            let (x, y) = (h * normal(rng), h * normal(rng));
            re[i * n + j] = x;
            im[i * n + j] = y;
            re[j * n + i] = x;
            im[j * n + i] = -y;
        }
    }
    (re, im)
}

/// GSE as a 2N×2N self-dual Hermitian matrix. Quaternion a + bi + cj + dk
/// becomes the block [[a+ib, c+id], [−c+id, a−ib]]; off-diagonal
/// components are N(0,1/4) (E|q|² = 1), the real diagonal N(0,1/2).
pub(crate) fn gse_matrix(n: usize, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    let m = 2 * n;
    let mut re = vec![0.0; m * m];
    let mut im = vec![0.0; m * m];
    let mut set = |r: usize, c: usize, x: f64, y: f64| {
        re[r * m + c] = x;
        im[r * m + c] = y;
    };
    for i in 0..n {
        let a = std::f64::consts::FRAC_1_SQRT_2 * normal(rng);
        set(2 * i, 2 * i, a, 0.0);
        set(2 * i + 1, 2 * i + 1, a, 0.0);
        for j in i + 1..n {
            let a = 0.5 * normal(rng);
            let b = 0.5 * normal(rng);
            let c = 0.5 * normal(rng);
            let d = 0.5 * normal(rng);
            let (r0, r1, c0, c1) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
            set(r0, c0, a, b);
            set(r0, c1, c, d);
            set(r1, c0, -c, d);
            set(r1, c1, a, -b);
            set(c0, r0, a, -b);
            set(c0, r1, -c, -d);
            set(c1, r0, c, -d);
            set(c1, r1, a, b);
        }
    }
    (re, im)
}

/// Tridiagonal model: diagonal N(0, 2/β), sub-diagonal χ_{β(N−i)}/√β.
fn beta_tridiagonal(beta: f64, n: usize, rng: &mut ChaCha8Rng) -> SymTridiagonal {
    let diag_sd = (2.0 / beta).sqrt();
    let diag = (0..n).map(|_| diag_sd * normal(rng)).collect();
    let off = (1..n)
        .map(|i| {
            let chi2 = ChiSquared::new(beta * (n - i) as f64).expect("positive degrees of freedom");
            (chi2.sample(rng) / beta).sqrt()
        })
        .collect();
    SymTridiagonal::new(diag, off)
}

const PAIR_REL_TOL: f64 = 1e-8;

/// One λ_max draw. For β = 4 the Kramers pair is collapsed to one value.
pub fn gaussian_lambda_max(beta: Beta, n: usize, method: EigenMethod, rng: &mut ChaCha8Rng) -> f64 {
    if method == EigenMethod::Tridiagonal {
        return beta_tridiagonal(beta.value() as f64, n, rng).largest();
    }
    match beta {
        Beta::One => tridiagonalize_symmetric(&mut goe_matrix(n, rng), n).largest(),
        Beta::Two => {
            let (mut re, mut im) = gue_matrix(n, rng);
            tridiagonalize_hermitian(&mut re, &mut im, n).largest()
        }
        Beta::Four => {
            let (mut re, mut im) = gse_matrix(n, rng);
            let t = tridiagonalize_hermitian(&mut re, &mut im, 2 * n);
            let (l0, l1) = (t.kth_largest(0), t.kth_largest(1));
            debug_assert!(
                (l0 - l1).abs() <= PAIR_REL_TOL * l0.abs().max(1.0),
                "top eigenvalue not doubled: {l0} vs {l1}"
            );
            0.5 * (l0 + l1)
        }
    }
}

fn ensemble_model(beta: Beta) -> Model {
    match beta {
        Beta::One => Model::Goe,
        Beta::Two => Model::Gue,
        Beta::Four => Model::Gse,
    }
}

/// Raw λ_max of `count` independent GOE/GUE/GSE matrices of dimension `n`.
pub fn sample_gaussian_ensemble(beta: Beta, n: usize, count: usize, seed: u64) -> Result<SampleSet> {
    sample_gaussian_ensemble_with(beta, n, count, seed, EigenMethod::Dense)
}

pub fn sample_gaussian_ensemble_with(
    beta: Beta,
    n: usize,
    count: usize,
    seed: u64,
    method: EigenMethod,
) -> Result<SampleSet> {
    require(n >= 1, "N must be at least 1")?;
    require(count >= 1, "count must be at least 1")?;
    let values = par_samples(count, seed, |rng| gaussian_lambda_max(beta, n, method, rng));
    let mut set = SampleSet::new(ensemble_model(beta), seed, values)
        .with_param("n", n)
        .with_param("samples", count);
    if method == EigenMethod::Tridiagonal {
        set = set.with_param("method", "tridiagonal");
    }
    Ok(set)
}

/// Edge-scaled λ_max (σ = 1) of real symmetric Wigner matrices with i.i.d.
/// entries on and above the diagonal.
pub fn sample_wigner(n: usize, law: EntryLaw, count: usize, seed: u64) -> Result<SampleSet> {
    require(n >= 1, "N must be at least 1")?;
    require(count >= 1, "count must be at least 1")?;
    let raw = par_samples(count, seed, |rng| {
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = law.draw(rng);
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        tridiagonalize_symmetric(&mut a, n).largest()
    });
    let set = SampleSet::new(Model::Wigner, seed, raw)
        .with_param("n", n)
        .with_param("samples", count)
        .with_param("entries", law.as_str());
    center_scale(&set, &ScalingSpec::new(1.0, n, Beta::One)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::rng::stream_rng;
    use crate::gof::summary_stats;

    #[test]
    fn scaling_examples() {
        let spec = ScalingSpec::new(1.0, 64, Beta::Two).unwrap();
        assert!((spec.scale(16.5) - 1.0).abs() < 1e-14);
        assert!(spec.scale(16.0).abs() < 1e-14);
        for &l in &[-3.0, 0.0, 16.5, 123.456] {
            assert!((spec.unscale(spec.scale(l)) - l).abs() <= 1e-12);
        }
        let gse = ScalingSpec::new(1.0, 32, Beta::Four).unwrap();
        assert!((gse.scale(12.0) - (12.0 - 2.0 * 32f64.sqrt()) * 2.0).abs() < 1e-13);
        assert!((gse.unscale(gse.scale(11.3)) - 11.3).abs() < 1e-12);
        assert!(ScalingSpec::new(0.0, 4, Beta::One).is_err());
        assert!(ScalingSpec::new(-1.0, 4, Beta::One).is_err());
        assert!(ScalingSpec::new(1.0, 0, Beta::One).is_err());
    }

    #[test]
    fn center_scale_keeps_raw() {
        let raw = SampleSet::new(Model::Gue, 1, vec![16.0, 16.5]);
        let scaled = center_scale(&raw, &ScalingSpec::new(1.0, 64, Beta::Two).unwrap()).unwrap();
        assert_eq!(scaled.raw.as_deref(), Some(&[16.0, 16.5][..]));
        assert!((scaled.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn one_by_one_goe_is_centered() {
        let s = sample_gaussian_ensemble(Beta::One, 1, 100_000, 5).unwrap();
        let st = summary_stats(&s.values).unwrap();
        assert!(st.mean.abs() < 0.02, "mean {}", st.mean);
        // diagonal variance 2
        assert!((st.sd - 2f64.sqrt()).abs() < 0.02, "sd {}", st.sd);
    }

    #[test]
    fn two_by_two_goe_matches_closed_form() {
        for i in 0..200 {
            let a = goe_matrix(2, &mut stream_rng(9, i));
            let (p, b, d) = (a[0], a[1], a[3]);
            let closed = 0.5 * (p + d) + ((0.5 * (p - d)).powi(2) + b * b).sqrt();
            let lam = gaussian_lambda_max(Beta::One, 2, EigenMethod::Dense, &mut stream_rng(9, i));
            assert!((lam - closed).abs() <= 1e-10, "{lam} vs {closed}");
        }
    }

    #[test]
    fn two_by_two_gue_matches_closed_form() {
        for i in 0..200 {
            let (re, im) = gue_matrix(2, &mut stream_rng(10, i));
            let (p, d) = (re[0], re[3]);
            let b2 = re[1] * re[1] + im[1] * im[1];
            let closed = 0.5 * (p + d) + ((0.5 * (p - d)).powi(2) + b2).sqrt();
            let lam = gaussian_lambda_max(Beta::Two, 2, EigenMethod::Dense, &mut stream_rng(10, i));
            assert!((lam - closed).abs() <= 1e-10);
        }
    }

    #[test]
    fn gse_spectrum_is_doubled() {
        for i in 0..20 {
            let (mut re, mut im) = gse_matrix(6, &mut stream_rng(11, i));
            let ev = tridiagonalize_hermitian(&mut re, &mut im, 12).eigenvalues_ql();
            for k in 0..6 {
                let (a, b) = (ev[2 * k], ev[2 * k + 1]);
                assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0), "{a} {b}");
            }
        }
    }

    #[test]
    fn gse_one_by_one_has_half_variance() {
        let s = sample_gaussian_ensemble(Beta::Four, 1, 50_000, 3).unwrap();
        let st = summary_stats(&s.values).unwrap();
        assert!(st.mean.abs() < 0.01);
        assert!((st.sd - 0.5f64.sqrt()).abs() < 0.01);
    }

    #[test]
    fn entry_variances() {
        let n = 40;
        let (mut off, mut diag) = (0.0, 0.0);
        let reps = 400;
        for i in 0..reps {
            let (re, im) = gue_matrix(n, &mut stream_rng(12, i));
            for r in 0..n {
                diag += re[r * n + r].powi(2);
                for c in r + 1..n {
                    off += re[r * n + c].powi(2) + im[r * n + c].powi(2);
                }
            }
        }
        let diag = diag / (reps as usize * n) as f64;
        let off = off / (reps as usize * n * (n - 1) / 2) as f64;
        assert!((diag - 1.0).abs() < 0.05, "{diag}");
        assert!((off - 1.0).abs() < 0.02, "{off}");
    }

    #[test]
    fn tridiagonal_model_matches_dense_moments() {
        for beta in Beta::ALL {
            let dense = sample_gaussian_ensemble(beta, 8, 20_000, 21).unwrap();
            let tri = sample_gaussian_ensemble_with(beta, 8, 20_000, 22, EigenMethod::Tridiagonal).unwrap();
            let a = summary_stats(&dense.values).unwrap();
            let b = summary_stats(&tri.values).unwrap();
            assert!((a.mean - b.mean).abs() < 0.03, "beta {beta}: {} vs {}", a.mean, b.mean);
            assert!((a.sd - b.sd).abs() < 0.03, "beta {beta}: {} vs {}", a.sd, b.sd);
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let a = sample_gaussian_ensemble(Beta::Two, 12, 30, 77).unwrap();
        let b = sample_gaussian_ensemble(Beta::Two, 12, 30, 77).unwrap();
        assert_eq!(a, b);
        let c = sample_gaussian_ensemble(Beta::Two, 12, 30, 78).unwrap();
        assert_ne!(a.values, c.values);
    }

    #[test]
    fn wigner_small_cases() {
        let s = sample_wigner(1, EntryLaw::Rademacher, 100, 4).unwrap();
        for &l in s.raw.as_ref().unwrap() {
            assert!(l == 1.0 || l == -1.0);
        }
        assert_eq!(s, sample_wigner(1, EntryLaw::Rademacher, 100, 4).unwrap());
    }

    #[test]
    fn wigner_edge_location() {
        let n = 256;
        for (law, count) in [(EntryLaw::Rademacher, 2000), (EntryLaw::Uniform, 200)] {
            let s = sample_wigner(n, law, count, 8).unwrap();
            let edge = 2.0 * (n as f64).sqrt();
            let mean = s.raw.unwrap().iter().map(|l| l / edge).sum::<f64>() / count as f64;
            assert!((mean - 1.0).abs() < 0.03, "{mean}");
        }
    }
}

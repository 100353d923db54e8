use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Geometric};

use super::rng::par_samples;
use super::{require, Model, SampleSet};
use crate::distributions::SummaryStats;
use crate::error::{Error, Result};

/// Service-time law, each with mean 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Service {
    Exponential,
    /// P(w = j) = 2^{−(j+1)} on j = 0, 1, 2, …
    Geometric,
    Deterministic,
}

impl Service {
    pub fn mean(self) -> f64 {
        1.0
    }

    pub fn sd(self) -> f64 {
        match self {
            Service::Exponential => 1.0,
            Service::Geometric => std::f64::consts::SQRT_2,
            Service::Deterministic => 0.0,
        }
    }

    fn draw(self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Service::Exponential => Exp1.sample(rng),
            Service::Geometric => Geometric::new(0.5).expect("valid p").sample(rng) as f64,
            Service::Deterministic => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Service::Exponential => "exponential",
            Service::Geometric => "geometric",
            Service::Deterministic => "deterministic",
        }
    }
}

impl std::str::FromStr for Service {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exponential" => Ok(Service::Exponential),
            "geometric" => Ok(Service::Geometric),
            "deterministic" => Ok(Service::Deterministic),
            _ => Err(Error::InvalidArgument(format!("unknown service law '{s}'"))),
        }
    }
}

/// Centering and scaling constants of the n^{1/3} regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthConstants {
    pub c1: f64,
    pub c2: f64,
    /// True when obtained from [`estimate_growth_constants`].
    pub estimated: bool,
}

/// Scaling applied to the departure time D(k, n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QueueScaling {
    /// Fixed k: (D − n·mean)/(sd·√n); sd is taken as 1 for deterministic
    /// service.
    Brownian,
    /// (D − c₁n)/(c₂n^{1/3}).
    CubeRoot(GrowthConstants),
}

impl QueueScaling {
    fn apply(self, d: f64, n: usize, service: Service) -> f64 {
        let nf = n as f64;
        match self {
            QueueScaling::Brownian => {
                let sd = if service.sd() > 0.0 { service.sd() } else { 1.0 };
                (d - nf * service.mean()) / (sd * nf.sqrt())
            }
            QueueScaling::CubeRoot(c) => (d - c.c1 * nf) / (c.c2 * nf.cbrt()),
        }
    }
}

/// D(k, n) from the recursion D(i,j) = max(D(i−1,j), D(i,j−1)) + w_{ij}
/// over a row-major k×n weight array.
pub fn last_passage_time(weights: &[f64], k: usize, n: usize) -> f64 {
    assert_eq!(weights.len(), k * n);
    let mut row = vec![0.0f64; n];
    for i in 0..k {
        let w = &weights[i * n..(i + 1) * n];
        let mut left = f64::NEG_INFINITY;
        for j in 0..n {
            let up = if i == 0 { f64::NEG_INFINITY } else { row[j] };
            let best = if i == 0 && j == 0 { 0.0 } else { up.max(left) };
            row[j] = best + w[j];
            left = row[j];
        }
    }
    row[n - 1]
}

fn draw_departure(k: usize, n: usize, service: Service, rng: &mut ChaCha8Rng) -> f64 {
    let mut row = vec![0.0f64; n];
    for i in 0..k {
        let mut left = if i == 0 { 0.0 } else { f64::NEG_INFINITY };
        for r in row.iter_mut() {
            let best = if i == 0 { left } else { r.max(left) };
            *r = best + service.draw(rng);
            left = *r;
        }
    }
    row[n - 1]
}

/// Departure time of customer `k` from station `n` of a tandem queue
/// (equivalently the last-passage time to (k, n)).
pub fn sample_queue(
    k: usize,
    n: usize,
    service: Service,
    scaling: QueueScaling,
    count: usize,
    seed: u64,
) -> Result<SampleSet> {
    require(k >= 1 && n >= 1, "k and n must be at least 1")?;
    require(count >= 1, "count must be at least 1")?;
    if let QueueScaling::CubeRoot(c) = scaling {
        require(c.c2 > 0.0, "c2 must be positive")?;
    }
    let raw = par_samples(count, seed, |rng| draw_departure(k, n, service, rng));
    let values = raw.iter().map(|&d| scaling.apply(d, n, service)).collect();
    let mut set = SampleSet::new(Model::Queue, seed, values)
        .with_param("k", k)
        .with_param("n", n)
        .with_param("samples", count)
        .with_param("service", service.as_str());
    set = match scaling {
        QueueScaling::Brownian => set.with_param("scaling", "brownian"),
        QueueScaling::CubeRoot(c) => set
            .with_param("scaling", "cube-root")
            .with_param("c1", c.c1)
            .with_param("c2", c.c2)
            .with_param("constants", if c.estimated { "estimated" } else { "supplied" }),
    };
    set.raw = Some(raw);
    Ok(set)
}

/// Regression estimate of (c₁, c₂) with k = round(ratio·n).
///
/// Fits sd(D) ≈ c₂σ_ref n^{1/3} and mean(D) ≈ c₁n + c₂μ_ref n^{1/3} by
/// least squares across `ns`, where μ_ref and σ_ref are the limit law's
/// mean and standard deviation.
pub fn estimate_growth_constants(
    ratio: f64,
    ns: &[usize],
    service: Service,
    count: usize,
    seed: u64,
    reference: &SummaryStats,
) -> Result<GrowthConstants> {
    require(ratio > 0.0 && ratio.is_finite(), "ratio must be positive")?;
    require(ns.len() >= 2, "need at least two values of n")?;
    require(count >= 2, "count must be at least 2")?;
    require(service != Service::Deterministic, "deterministic service has no fluctuations")?;
    let mut means = Vec::with_capacity(ns.len());
    let mut sds = Vec::with_capacity(ns.len());
    for (idx, &n) in ns.iter().enumerate() {
        require(n >= 1, "n must be at least 1")?;
        let k = ((ratio * n as f64).round() as usize).max(1);
        let d = par_samples(count, seed.wrapping_add(idx as u64), |rng| draw_departure(k, n, service, rng));
        let st = crate::gof::summary_stats(&d)?;
        means.push(st.mean);
        sds.push(st.sd);
    }
    let t: Vec<f64> = ns.iter().map(|&n| (n as f64).cbrt()).collect();
    let c2 = sds.iter().zip(&t).map(|(s, t)| s * t).sum::<f64>()
        / (reference.sd * t.iter().map(|t| t * t).sum::<f64>());
    let c1 = ns
        .iter()
        .zip(means.iter().zip(&t))
        .map(|(&n, (m, t))| (m - c2 * reference.mean * t) * n as f64)
        .sum::<f64>()
        / ns.iter().map(|&n| (n as f64).powi(2)).sum::<f64>();
    Ok(GrowthConstants { c1, c2, estimated: true })
}

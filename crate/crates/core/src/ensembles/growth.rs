use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;

use super::rng::{par_samples, stream_rng, SHARED_STREAM};
use super::{require, Model, SampleSet};
use crate::error::{Error, Result};

/// Height of a site not yet reached by the growing region.
pub const UNREACHED: i64 = i64::MIN;

/// Law of the site parameters p_x ∈ [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PLaw {
    Constant(f64),
    Uniform { lo: f64, hi: f64 },
    Beta { a: f64, b: f64 },
}

impl PLaw {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            PLaw::Constant(p) => (0.0..=1.0).contains(&p),
            PLaw::Uniform { lo, hi } => 0.0 <= lo && lo <= hi && hi <= 1.0,
            PLaw::Beta { a, b } => a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite(),
        };
        require(ok, "p-law must be supported in [0, 1]")
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            PLaw::Constant(p) => p,
            PLaw::Uniform { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
            PLaw::Beta { a, b } => rand_distr::Beta::new(a, b).expect("validated").sample(rng),
        }
    }

    pub fn environment(&self, sites: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..sites).map(|_| self.draw(rng)).collect()
    }
}

impl std::fmt::Display for PLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PLaw::Constant(p) => write!(f, "const:{p}"),
            PLaw::Uniform { lo, hi } => write!(f, "uniform:{lo},{hi}"),
            PLaw::Beta { a, b } => write!(f, "beta:{a},{b}"),
        }
    }
}

/// Parses `const:P`, `uniform:LO,HI` or `beta:A,B`.
impl std::str::FromStr for PLaw {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse p-law '{s}'"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<f64> = args
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let law = match (kind, nums.as_slice()) {
            ("const", [p]) => PLaw::Constant(*p),
            ("uniform", [lo, hi]) => PLaw::Uniform { lo: *lo, hi: *hi },
            ("beta", [a, b]) => PLaw::Beta { a: *a, b: *b },
            _ => return Err(bad()),
        };
        law.validate()?;
        Ok(law)
    }
}

/// Order in which sites are updated within one time step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepOrder {
    /// Every site reads its left neighbour's height from the previous time.
    #[default]
    Synchronous,
    /// Sites updated left to right in place, so a site sees its left
    /// neighbour's new height.
    LeftToRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GrowthOptions {
    pub sweep: SweepOrder,
    /// Environment shared by all samples (true) or redrawn per sample.
    pub quenched: bool,
    /// Site whose height is reported.
    pub probe: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSample {
    pub environment: Vec<f64>,
    /// Heights on sites 0..=t.
    pub profile: Vec<i64>,
}

fn update(h: &mut [i64], x: usize, left: i64, p: f64, coin: &mut impl FnMut(usize, f64) -> bool) {
    if left > h[x] {
        h[x] = left;
    } else if h[x] != UNREACHED && coin(x, p) {
        h[x] += 1;
    }
}

/// Heights after `t` steps from h(0) = 0 with every other site unreached.
///
/// At each step a site takes its left neighbour's height if that is
/// larger, otherwise grows by one when `coin(x, p_x)` returns true.
pub fn growth_profile(
    env: &[f64],
    t: usize,
    sweep: SweepOrder,
    mut coin: impl FnMut(usize, f64) -> bool,
) -> Vec<i64> {
    assert!(env.len() > t, "environment must cover sites 0..=t");
    let mut h = vec![UNREACHED; t + 1];
    h[0] = 0;
    for step in 1..=t {
        match sweep {
            SweepOrder::Synchronous => {
                for x in (0..=step).rev() {
                    let left = if x == 0 { UNREACHED } else { h[x - 1] };
                    update(&mut h, x, left, env[x], &mut coin);
                }
            }
            SweepOrder::LeftToRight => {
                for x in 0..=step {
                    let left = if x == 0 { UNREACHED } else { h[x - 1] };
                    update(&mut h, x, left, env[x], &mut coin);
                }
            }
        }
    }
    h
}

/// Full profiles of `count` independent runs.
pub fn simulate_growth(
    law: PLaw,
    t: usize,
    count: usize,
    seed: u64,
    opts: GrowthOptions,
) -> Result<Vec<GrowthSample>> {
    law.validate()?;
    require(t >= 1, "t must be at least 1")?;
    require(count >= 1, "count must be at least 1")?;
    require(opts.probe <= t, "probe site must lie in 0..=t")?;
    let shared = opts
        .quenched
        .then(|| law.environment(t + 1, &mut stream_rng(seed, SHARED_STREAM)));
    Ok(par_samples(count, seed, |rng| {
        let environment = match &shared {
            Some(env) => env.clone(),
            None => law.environment(t + 1, rng),
        };
        let profile = growth_profile(&environment, t, opts.sweep, |_, p| rng.random::<f64>() < p);
        GrowthSample { environment, profile }
    }))
}

/// Height above `opts.probe` (default the origin) after `t` steps.
pub fn sample_growth_env(
    law: PLaw,
    t: usize,
    count: usize,
    seed: u64,
    opts: GrowthOptions,
) -> Result<SampleSet> {
    let runs = simulate_growth(law, t, count, seed, opts)?;
    let values = runs.iter().map(|r| r.profile[opts.probe] as f64).collect();
    let sweep = match opts.sweep {
        SweepOrder::Synchronous => "synchronous",
        SweepOrder::LeftToRight => "left-to-right",
    };
    Ok(SampleSet::new(Model::Growth, seed, values)
        .with_param("t", t)
        .with_param("samples", count)
        .with_param("p_law", law.to_string())
        .with_param("mode", if opts.quenched { "quenched" } else { "annealed" })
        .with_param("sweep", sweep)
        .with_param("probe", opts.probe))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn all_heads_gives_cone() {
        for t in 1..12 {
            let h = growth_profile(&vec![1.0; t + 1], t, SweepOrder::Synchronous, |_, p| p >= 1.0);
            let expect: Vec<i64> = (0..=t).map(|x| (t - x) as i64).collect();
            assert_eq!(h, expect);
        }
        let s = sample_growth_env(PLaw::Constant(1.0), 9, 4, 0, GrowthOptions { probe: 3, ..Default::default() })
            .unwrap();
        assert!(s.values.iter().all(|&v| v == 6.0));
    }

    #[test]
    fn all_tails_only_spreads() {
        let runs = simulate_growth(PLaw::Constant(0.0), 10, 5, 1, GrowthOptions::default()).unwrap();
        for r in runs {
            assert_eq!(r.profile, vec![0; 11]);
        }
    }

    #[test]
    fn left_to_right_sweep_fills_flat() {
        let h = growth_profile(&[1.0; 6], 5, SweepOrder::LeftToRight, |_, _| true);
        assert_eq!(h, vec![5; 6]);
    }

    /// Distribution of (h(0,2), h(1,2)) over every length-3 coin string.
    fn enumerate_t2(p: f64) -> (BTreeMap<i64, f64>, BTreeMap<i64, f64>) {
        let mut h0 = BTreeMap::new();
        let mut h1 = BTreeMap::new();
        for bits in 0u32..8 {
            let weight: f64 = (0..3).map(|i| if bits >> i & 1 == 1 { p } else { 1.0 - p }).product();
            let mut next = 0;
            let h = growth_profile(&[p; 3], 2, SweepOrder::Synchronous, |_, _| {
                let b = bits >> next & 1 == 1;
                next += 1;
                b
            });
            assert!(next <= 3);
            *h0.entry(h[0]).or_insert(0.0) += weight;
            *h1.entry(h[1]).or_insert(0.0) += weight;
            assert_eq!(h[2], 0);
        }
        (h0, h1)
    }

    #[test]
    fn t2_matches_enumeration() {
        for p in [0.5, 0.3] {
            let q = 1.0 - p;
            let (h0, h1) = enumerate_t2(p);
            // origin: two independent coins
            let exact0 = [(0, q * q), (1, 2.0 * p * q), (2, p * p)];
            for (k, v) in exact0 {
                assert!((h0[&k] - v).abs() < 1e-15);
            }
            // site 1 copies h(0,1) = 1, otherwise flips once from 0
            assert!((h1[&1] - (p + q * p)).abs() < 1e-15);
            assert!((h1[&0] - q * q).abs() < 1e-15);

            let n = 40_000;
            let s = sample_growth_env(PLaw::Constant(p), 2, n, 9, GrowthOptions::default()).unwrap();
            for (k, v) in exact0 {
                let freq = s.values.iter().filter(|&&x| x == k as f64).count() as f64 / n as f64;
                let tol = 4.0 * (v * (1.0 - v) / n as f64).sqrt();
                assert!((freq - v).abs() < tol, "p={p} k={k}: {freq} vs {v}");
            }
        }
    }

    #[test]
    fn quenched_and_annealed_environments() {
        let law = PLaw::Uniform { lo: 0.2, hi: 0.9 };
        let q = simulate_growth(law, 20, 6, 3, GrowthOptions { quenched: true, ..Default::default() }).unwrap();
        assert!(q.iter().all(|r| r.environment == q[0].environment));
        let a = simulate_growth(law, 20, 6, 3, GrowthOptions::default()).unwrap();
        assert_ne!(a[0].environment, a[1].environment);
        assert!(a.iter().flat_map(|r| &r.environment).all(|&p| (0.2..=0.9).contains(&p)));
    }

    #[test]
    fn heights_stay_inside_cone() {
        let law = PLaw::Beta { a: 2.0, b: 2.0 };
        let t = 50;
        for r in simulate_growth(law, t, 20, 4, GrowthOptions::default()).unwrap() {
            for (x, &h) in r.profile.iter().enumerate() {
                assert!(h >= 0 && h <= (t - x) as i64, "x={x} h={h}");
            }
        }
    }

    #[test]
    fn parse_laws() {
        assert_eq!("const:0.5".parse::<PLaw>().unwrap(), PLaw::Constant(0.5));
        assert_eq!("uniform:0.1,0.4".parse::<PLaw>().unwrap(), PLaw::Uniform { lo: 0.1, hi: 0.4 });
        assert_eq!("beta:2,3".parse::<PLaw>().unwrap(), PLaw::Beta { a: 2.0, b: 3.0 });
        assert!("const:1.5".parse::<PLaw>().is_err());
        assert!("normal:0,1".parse::<PLaw>().is_err());
        let law = PLaw::Uniform { lo: 0.1, hi: 0.4 };
        assert_eq!(law.to_string().parse::<PLaw>().unwrap(), law);
    }

    #[test]
    fn deterministic() {
        let o = GrowthOptions::default();
        let law = PLaw::Constant(0.4);
        assert_eq!(sample_growth_env(law, 30, 10, 5, o).unwrap(), sample_growth_env(law, 30, 10, 5, o).unwrap());
    }
}

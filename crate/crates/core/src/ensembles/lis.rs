use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use super::rng::par_samples;
use super::{require, Model, SampleSet};
use crate::error::Result;

/// Length of the longest strictly increasing subsequence by patience
/// sorting: O(N log N).
pub fn lis_length(perm: &[u32]) -> usize {
    let mut tops: Vec<u32> = Vec::new();
    for &x in perm {
        let pos = tops.partition_point(|&t| t < x);
        if pos == tops.len() {
            tops.push(x);
        } else {
            tops[pos] = x;
        }
    }
    tops.len()
}

/// Uniform permutation of 0..n by Fisher–Yates.
pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n as u32).collect();
    p.shuffle(rng);
    p
}

/// Scaled LIS statistic (ℓ_N − 2√N)/N^{1/6} of uniform random permutations.
pub fn sample_lis(n: usize, count: usize, seed: u64) -> Result<SampleSet> {
    sample_lis_with(n, count, seed, random_permutation)
}

/// As [`sample_lis`] with a caller-supplied permutation source.
pub fn sample_lis_with<P>(n: usize, count: usize, seed: u64, source: P) -> Result<SampleSet>
where
    P: Fn(usize, &mut ChaCha8Rng) -> Vec<u32> + Sync,
{
    require(n >= 1, "N must be at least 1")?;
    require(count >= 1, "count must be at least 1")?;
    require(n <= u32::MAX as usize, "N too large")?;
    let raw: Vec<f64> = par_samples(count, seed, |rng| lis_length(&source(n, rng)) as f64);
    let nf = n as f64;
    let values = raw.iter().map(|&l| (l - 2.0 * nf.sqrt()) / nf.powf(1.0 / 6.0)).collect();
    let mut set = SampleSet::new(Model::Lis, seed, values)
        .with_param("n", n)
        .with_param("samples", count);
    set.raw = Some(raw);
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::rng::stream_rng;
    use proptest::prelude::*;

    fn brute_force_lis(p: &[u32]) -> usize {
        let n = p.len();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let mut last = None;
            let mut ok = true;
            for (i, &x) in p.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if let Some(l) = last {
                        if x <= l {
                            ok = false;
                            break;
                        }
                    }
                    last = Some(x);
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    fn permutations(n: usize) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, (n - 1) as u32);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn exhaustive_against_brute_force() {
        for n in 1..=7 {
            for p in permutations(n) {
                assert_eq!(lis_length(&p), brute_force_lis(&p), "{p:?}");
            }
        }
    }

    #[test]
    fn mean_over_s3_is_two() {
        let lens: Vec<usize> = permutations(3).iter().map(|p| lis_length(p)).collect();
        assert_eq!(lens.len(), 6);
        assert_eq!(lens.iter().sum::<usize>(), 12);
    }

    #[test]
    fn extreme_permutations_via_hook() {
        let n = 50;
        let id = sample_lis_with(n, 3, 0, |n, _| (0..n as u32).collect()).unwrap();
        assert!(id.raw.unwrap().iter().all(|&l| l == n as f64));
        let rev = sample_lis_with(n, 3, 0, |n, _| (0..n as u32).rev().collect()).unwrap();
        assert!(rev.raw.unwrap().iter().all(|&l| l == 1.0));
    }

    #[test]
    fn shuffle_is_uniform_on_s3() {
        let mut counts = std::collections::HashMap::new();
        let reps = 60_000;
        for i in 0..reps {
            *counts.entry(random_permutation(3, &mut stream_rng(1, i))).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        for &c in counts.values() {
            // 10_000 expected, sd ≈ 91
            assert!((c as f64 - 10_000.0).abs() < 400.0, "{c}");
        }
    }

    #[test]
    fn scaled_statistic_and_determinism() {
        let a = sample_lis(1000, 20, 42).unwrap();
        assert_eq!(a, sample_lis(1000, 20, 42).unwrap());
        for (s, l) in a.values.iter().zip(a.raw.as_ref().unwrap()) {
            let expect = (l - 2.0 * 1000f64.sqrt()) / 1000f64.powf(1.0 / 6.0);
            assert!((s - expect).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn lis_bounds(seed in any::<u64>(), n in 1usize..300) {
            let p = random_permutation(n, &mut stream_rng(seed, 0));
            let l = lis_length(&p);
            let rev: Vec<u32> = p.iter().rev().cloned().collect();
            let d = lis_length(&rev);
            // Erdős–Szekeres: ℓ·(longest decreasing) ≥ n
            prop_assert!(l * d >= n);
            prop_assert!(l >= 1 && l <= n);
        }
    }
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Stream reserved for quantities shared by every sample (e.g. a quenched
/// environment).
pub const SHARED_STREAM: u64 = u64::MAX;

/// Independent generator for sample `index` under `seed`.
///
/// ChaCha is counter based: the key comes from the seed and the stream id
/// selects a disjoint keystream, so sample `i` sees the same numbers no
/// matter which worker draws it.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Runs `f` once per sample on the current rayon pool, preserving order.
pub fn par_samples<T, F>(count: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    (0..count)
        .into_par_iter()
        .map(|i| f(&mut stream_rng(seed, i as u64)))
        .collect()
}

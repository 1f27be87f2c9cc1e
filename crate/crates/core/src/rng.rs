//! Counter-based seeding.
//!
//! Every random draw in the crate is addressed by `(seed, stream)`: the
//! stream is usually a sample index or a block index. A generator for a given
//! address is independent of how many other streams were consumed before it,
//! so serial and parallel evaluation produce identical samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::ops::Range;

/// Number of consecutive draws that share one stream in [`par_blocks`].
pub const BLOCK: usize = 4096;

/// Generator for stream `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Splits `0..n` into fixed blocks of [`BLOCK`] indices, hands block `b` the
/// generator `stream_rng(seed, b)`, and returns the per-block results in
/// block order. The output does not depend on the thread count.
pub fn par_blocks<A, F>(n: usize, seed: u64, f: F) -> Vec<A>
where
    A: Send,
    F: Fn(&mut ChaCha8Rng, Range<usize>) -> A + Sync,
{
    let n_blocks = n.div_ceil(BLOCK);
    (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(seed, b as u64);
            let start = b * BLOCK;
            f(&mut rng, start..(start + BLOCK).min(n))
        })
        .collect()
}

/// Uniformly distributed point on the unit 2-sphere.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let s = (1.0 - z * z).max(0.0).sqrt();
    [s * phi.cos(), s * phi.sin(), z]
}

/// Derives a child seed for a named sub-computation, so that two consumers
/// sharing a user seed do not draw the same streams.
pub fn derive_seed(seed: u64, salt: &str) -> u64 {
    // FNV-1a over the salt, folded with the seed through splitmix64.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in salt.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix64(seed ^ h)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

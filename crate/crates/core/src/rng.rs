//! Seeding helpers shared by every sampler.
//!
//! Every sampler takes a plain `u64` seed. Campaigns derive per-sample seeds
//! with [`sub_seed`], a counter-based split, so sample `i` is the same no
//! matter how many threads evaluate the batch or in which order.

#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SeedRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeedRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of sample `index` in a campaign keyed by `seed`.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ splitmix64(index.wrapping_add(0x632B_E59B_D9B4_E019)))
}

/// Standard exponential variate.
pub(crate) fn exponential<R: Rng>(rng: &mut R) -> f64 {
    // 1 - u lies in (0, 1], so the log is finite
    let u: f64 = rng.gen();
    -(1.0 - u).ln()
}

/// Standard normal variate (Box-Muller).
pub(crate) fn normal<R: Rng>(rng: &mut R) -> f64 {
    let u: f64 = 1.0 - rng.gen::<f64>();
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (core::f64::consts::TAU * v).cos()
}

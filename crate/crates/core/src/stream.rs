//! Seeded random streams.
//!
//! Every stochastic operation takes an explicit random stream. Streams are
//! ChaCha8 generators keyed by `(master_seed, index)`: the seed selects the
//! key and the index selects one of 2^64 independent ChaCha streams, so
//! parallel trials never share state and results do not depend on execution
//! order.
//!
//! Gaussian draws use the Box–Muller transform on two uniforms from the
//! stream. The transform is fixed here (rather than delegated to a sampler
//! whose algorithm may change between releases) so that equal seeds give
//! bit-identical reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// The random stream type used throughout the crate.
pub type Stream = ChaCha8Rng;

/// Stream number `index` under `master_seed`.
pub fn stream(master_seed: u64, index: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Uniform draw in `[0, 1)` with 53 bits of precision.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen::<f64>()
}

/// Two independent standard normal draws via Box–Muller.
///
/// Consumes exactly two uniforms `u1, u2`; returns
/// `(r cos 2πu2, r sin 2πu2)` with `r = sqrt(-2 ln(1 - u1))`.
pub fn standard_normal_pair<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    // 1 - u lies in (0, 1], keeping the log finite.
    let u1 = 1.0 - uniform(rng);
    let u2 = uniform(rng);
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (TAU * u2).sin_cos();
    (r * c, r * s)
}

/// A fair coin.
pub fn coin<R: Rng + ?Sized>(rng: &mut R) -> bool {
    uniform(rng) < 0.5
}

/// `true` with probability `p` (`p = 0` never, `p = 1` always).
pub fn bernoulli<R: Rng + ?Sized>(rng: &mut R, p: f64) -> bool {
    uniform(rng) < p
}

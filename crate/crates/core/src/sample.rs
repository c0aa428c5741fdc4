//! Seeded generation of test points.
//!
//! All randomness flows through a ChaCha generator seeded from a 64-bit
//! value, so every campaign is reproducible from its recorded seed.
//! Parallel trials derive per-trial generators as `seed + trial`.

use alloc::vec::Vec;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::jacobi::JacobiCoords;
use crate::matrix::DiagonalMatrix;
use crate::rational::Rational;

/// Generator for trial `trial` of a campaign seeded with `seed`.
pub fn rng_for_trial(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial))
}

/// Random positive coordinates `p/q` with `p, q` uniform in `[1, k]`.
pub fn random_coords(n: usize, k: u64, rng: &mut impl RngCore) -> JacobiCoords {
    let k = k.max(1) as i64;
    JacobiCoords::from_fn(n, |_, _| {
        crate::rational::rat(rng.gen_range(1..=k), rng.gen_range(1..=k))
    })
    .expect("n >= 2")
}

/// Random positive diagonal with entries `p/q`, `p, q` in `[1, k]`.
pub fn random_positive_diagonal(n: usize, k: u64, rng: &mut impl RngCore) -> DiagonalMatrix {
    let k = k.max(1) as i64;
    let entries: Vec<Rational> = (0..n)
        .map(|_| crate::rational::rat(rng.gen_range(1..=k), rng.gen_range(1..=k)))
        .collect();
    DiagonalMatrix::from_entries(entries).expect("positive entries")
}

/// n = 4 coordinates on the degenerate slice `x_24 x_34 = x_12 x_13`,
/// where the three-variable substitution has no solution.
pub fn degenerate_slice_coords(k: u64, rng: &mut impl RngCore) -> JacobiCoords {
    let mut c = random_coords(4, k, rng);
    let forced = c.get(1, 2) * c.get(1, 3) / c.get(3, 4);
    c.set(2, 4, forced);
    c
}

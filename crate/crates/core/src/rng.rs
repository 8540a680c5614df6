//! Seeded sampling shared by the randomized checks and solver restarts.
//!
//! All randomness flows through ChaCha8 seeded from a `u64`, so identical
//! seeds give identical draws on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::element::Element;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Coordinates uniform in `[-1, 1]`.
pub fn uniform_element(rng: &mut SeededRng, len: usize) -> Element {
    Element((0..len).map(|_| rng.random_range(-1.0..=1.0)).collect())
}

pub fn gaussian_vec(rng: &mut SeededRng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn uniform(rng: &mut SeededRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..=hi)
}

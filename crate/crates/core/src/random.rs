//! Seeded random rationals.
//!
//! Every randomized routine takes a 64-bit seed and derives one ChaCha stream
//! per task index, so results do not depend on evaluation order.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ratpoly::Rational;

/// Coefficient heights used for successive random points.
pub const HEIGHTS: [i64; 3] = [10, 100, 1000];

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Height for the `trial`-th point: 10, then 100, then 1000 onwards.
pub fn height_for_trial(trial: usize) -> i64 {
    HEIGHTS[trial.min(HEIGHTS.len() - 1)]
}

/// `p/q` with `|p| <= height`, `1 <= q <= height`.
pub fn rational(rng: &mut ChaCha8Rng, height: i64) -> Rational {
    let p = rng.gen_range(-height..=height);
    let q = rng.gen_range(1..=height.max(1));
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng, height: i64) -> Rational {
    loop {
        let r = rational(rng, height);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

pub fn integer(rng: &mut ChaCha8Rng, height: i64) -> Rational {
    Rational::from_integer(BigInt::from(rng.gen_range(-height..=height)))
}

pub fn point(rng: &mut ChaCha8Rng, n: usize, height: i64) -> Vec<Rational> {
    (0..n).map(|_| rational(rng, height)).collect()
}

pub fn integer_point(rng: &mut ChaCha8Rng, n: usize, height: i64) -> Vec<Rational> {
    (0..n).map(|_| integer(rng, height)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = point(&mut rng_for(7, 0), 4, 100);
        let b = point(&mut rng_for(7, 0), 4, 100);
        let c = point(&mut rng_for(7, 1), 4, 100);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}

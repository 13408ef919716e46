//! Seeded randomness.
//!
//! Every random choice in the crate goes through ChaCha8 (`rand_chacha`),
//! seeded with `seed_from_u64`. Independent consumers of one seed are
//! separated by ChaCha stream ids, so results depend only on
//! `(seed, stream)` and never on platform or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform direction on the unit sphere of dimension `dim`.
pub fn unit_vector(rng: &mut Rng, dim: usize) -> Vec<f64> {
    use rand_distr::{Distribution, StandardNormal};
    loop {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        let n = crate::point::norm(&v);
        if n > 1e-12 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

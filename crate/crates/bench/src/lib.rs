//! Fixed workloads shared by the benchmarks.

use rk2hn_core::algebra::Rational;
use rk2hn_core::kempf::WeightedVector;
use rk2hn_core::random::{self, TensorShape};
use rk2hn_core::tensor::Rank2Tensor;

pub fn weighted_vectors(count: usize, max_len: usize) -> Vec<WeightedVector> {
    let mut rng = random::seeded(11);
    (0..count).map(|_| random::weighted_vector(&mut rng, max_len, 50)).collect()
}

pub fn tensors(count: usize, shape: TensorShape) -> Vec<(Rank2Tensor, Rational)> {
    let mut rng = random::seeded(12);
    (0..count)
        .map(|_| {
            let t = random::tensor(&mut rng, shape);
            (t, random::tau(&mut rng))
        })
        .collect()
}

//! Reproducible random inputs.
//!
//! All generators use ChaCha8 seeded with `seed_from_u64`, so a seed gives the
//! same matrix on every platform. Matrix entries are integers drawn uniformly
//! from `[-3, 3]` in row-major order.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;
use crate::tensor::SquareMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(dim: usize, seed: u64) -> SquareMatrix {
    random_matrix_with(dim, &mut rng(seed))
}

pub fn random_matrix_with(dim: usize, rng: &mut impl Rng) -> SquareMatrix {
    SquareMatrix::from_fn(dim, |_, _| Scalar::from_i64(rng.gen_range(-3..=3)))
}

/// Random integer matrix of determinant one, as a product of elementary
/// shears.
pub fn random_sl2(rng: &mut impl Rng) -> SquareMatrix {
    let mut m = SquareMatrix::identity(2);
    for _ in 0..3 {
        let a = rng.gen_range(-2..=2);
        let b = rng.gen_range(-2..=2);
        let upper = SquareMatrix::from_i64_rows(&[&[1, a], &[0, 1]]);
        let lower = SquareMatrix::from_i64_rows(&[&[1, 0], &[b, 1]]);
        m = m.mul(&upper).and_then(|x| x.mul(&lower)).expect("2x2");
    }
    m
}

/// `p/q` with `p ∈ ±[1, 5]`, `q ∈ [1, 5]`.
pub fn random_nonzero_rational(rng: &mut impl Rng) -> Scalar {
    let p = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Scalar::ratio(p, rng.gen_range(1..=5))
}

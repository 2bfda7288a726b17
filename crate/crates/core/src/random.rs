//! Deterministic random generation of semi-laplacian test matrices.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::{Rational, RationalMatrix};

/// Integer semi-laplacian matrix with off-diagonal entries drawn uniformly
/// from [-entry_bound, entry_bound] and each diagonal entry set to the
/// negated sum of the rest of its column. Identical seeds give identical
/// matrices.
pub fn random_semi_laplacian(n: usize, entry_bound: i64, seed: u64) -> Result<RationalMatrix> {
    if n == 0 {
        return Err(Error::Domain("matrix size must be at least 1".into()));
    }
    if entry_bound < 1 {
        return Err(Error::Domain(format!(
            "entry bound must be at least 1, got {entry_bound}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix::filled(n, n, Rational::from(BigInt::from(0)));
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                let value = rng.gen_range(-entry_bound..=entry_bound);
                m[(i, j)] = Rational::from(BigInt::from(value));
            }
        }
    }
    for j in 1..=n {
        let mut sum = Rational::from(BigInt::from(0));
        for i in 1..=n {
            if i != j {
                sum += &m[(i, j)];
            }
        }
        m[(j, j)] = -sum;
    }
    Ok(m)
}

/// Splitmix-style mixer deriving an independent stream seed from a base
/// seed and a pair of loop counters, so campaign trials never reuse streams.
pub fn mix_seed(base: u64, lane: u64, step: u64) -> u64 {
    fn scramble(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    scramble(base ^ scramble(lane ^ scramble(step)))
}

//! Deterministic pseudo-random rationals. All randomness in the crate flows
//! from a `u64` seed through ChaCha8, so results are identical across
//! platforms.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a / b` with `|a| <= num_bound` and `1 <= b <= den_bound`.
pub fn random_rational<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> BigRational {
    let a = rng.gen_range(-num_bound..=num_bound);
    let b = rng.gen_range(1..=den_bound);
    BigRational::new(a.into(), b.into())
}

/// A random integer vector of the given length, not identically zero.
pub fn random_integer_point<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<BigRational> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return v.into_iter().map(|x| BigRational::from_integer(x.into())).collect();
        }
    }
}

//! Rational kernels by reduction modulo several primes, Chinese remaindering
//! and rational reconstruction, followed by an exact check over the integers.
//!
//! The reduced echelon form modulo a prime `p` has the same pivots as over
//! the rationals unless `p` is unlucky, in which case its rank is smaller or
//! its pivot list is lexicographically later; such primes are discarded.
//! Once the reconstructed kernel `K` satisfies `A K = 0` exactly, its column
//! count forces it to be the whole kernel, and its shape (identity on the
//! free columns, zeros at later pivots) forces it to be the reduced-echelon
//! kernel, so the answer equals the fraction-free one.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::elim::{modular_echelon, Echelon, IntRow};
use super::matrix::ExactMatrix;
use super::scalar::{is_prime, reduce_bigint, Field, Scalar};

const MAX_PRIMES: usize = 4096;

/// Primes below 2^31, descending.
fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31).rev().filter(|&n| is_prime(n))
}

struct Accumulator {
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// Row-major `rank x free.len()` residues modulo `modulus`.
    values: Vec<BigInt>,
    modulus: BigInt,
    primes_used: usize,
}

impl Accumulator {
    fn start(e: &Echelon<u64>, ncols: usize, p: u64) -> Self {
        let free = e.free_columns(ncols);
        Self {
            pivots: e.pivots.clone(),
            values: kernel_residues(e, &free, p).into_iter().map(BigInt::from).collect(),
            free,
            modulus: BigInt::from(p),
            primes_used: 1,
        }
    }

    fn absorb(&mut self, e: &Echelon<u64>, p: u64) {
        let residues = kernel_residues(e, &self.free, p);
        let m = &self.modulus;
        let m_inv = BigInt::from(super::scalar::inv_mod(reduce_bigint(m, p), p));
        self.values.par_iter_mut().zip(residues.par_iter()).for_each(|(x, &r)| {
            let xp = reduce_bigint(x, p);
            let delta = (BigInt::from(r) - BigInt::from(xp)).mod_floor(&BigInt::from(p));
            let k = (delta * &m_inv).mod_floor(&BigInt::from(p));
            *x += m * k;
        });
        self.modulus *= p;
        self.primes_used += 1;
    }

    /// Every entry as a rational, or `None` if some entry has no small
    /// enough preimage yet.
    fn reconstruct(&self) -> Option<Vec<BigRational>> {
        let bound = (&self.modulus >> 1usize).sqrt();
        self.values
            .par_iter()
            .map(|u| rational_reconstruction(u, &self.modulus, &bound))
            .collect()
    }
}

/// Entry `(i, j)`: the coefficient at pivot row `i` of the kernel vector
/// for free column `j`, that is `-row_i[free_j]`.
fn kernel_residues(e: &Echelon<u64>, free: &[usize], p: u64) -> Vec<u64> {
    let w = free.len();
    let mut index = vec![usize::MAX; free.last().map_or(0, |&c| c + 1)];
    for (j, &c) in free.iter().enumerate() {
        index[c] = j;
    }
    let mut out = vec![0u64; e.rows.len() * w];
    for (i, row) in e.rows.iter().enumerate() {
        for &(c, v) in &row[1..] {
            out[i * w + index[c]] = (p - v) % p;
        }
    }
    out
}

/// `a / b` with `|a|, |b| <= bound` and `a = u b (mod m)`.
fn rational_reconstruction(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn reduce_rows(rows: &[IntRow], p: u64) -> Vec<Vec<(usize, u64)>> {
    rows.par_iter()
        .map(|row| row.iter().map(|(c, v)| (*c, reduce_bigint(v, p))).filter(|&(_, v)| v != 0).collect())
        .collect()
}

/// Checks `A K = 0` with `K` given by its pivot block.
fn verify(rows: &[IntRow], pivots: &[usize], free: &[usize], block: &[BigRational]) -> bool {
    let w = free.len();
    if w == 0 {
        return true;
    }
    // Column j of K scaled to integers: lcm of its denominators.
    let dens: Vec<BigInt> = (0..w)
        .into_par_iter()
        .map(|j| (0..pivots.len()).fold(BigInt::one(), |acc, i| acc.lcm(block[i * w + j].denom())))
        .collect();
    let mut position = vec![None; pivots.iter().chain(free).copied().max().map_or(0, |c| c + 1)];
    for (i, &c) in pivots.iter().enumerate() {
        position[c] = Some(Ok(i));
    }
    for (j, &c) in free.iter().enumerate() {
        position[c] = Some(Err(j));
    }
    let scaled: Vec<BigInt> = block
        .par_iter()
        .enumerate()
        .map(|(k, q)| q.numer() * (&dens[k % w] / q.denom()))
        .collect();
    rows.par_iter().all(|row| {
        let mut acc = vec![BigInt::zero(); w];
        for (c, a) in row {
            match position.get(*c).copied().flatten() {
                Some(Ok(i)) => {
                    for j in 0..w {
                        let k = &scaled[i * w + j];
                        if !k.is_zero() {
                            acc[j] += a * k;
                        }
                    }
                }
                Some(Err(j)) => acc[j] += a * &dens[j],
                None => return false,
            }
        }
        acc.iter().all(Zero::is_zero)
    })
}

/// Reduced-echelon kernel of the integer system `rows` over the rationals,
/// laid out as in [`ExactMatrix::nullspace`].
pub(crate) fn multimodular_nullspace(rows: &[IntRow], ncols: usize) -> ExactMatrix {
    bounded_nullspace(rows, ncols, MAX_PRIMES)
        .unwrap_or_else(|| panic!("rational kernel did not stabilize after {MAX_PRIMES} primes"))
}

/// As [`multimodular_nullspace`], giving up after `max_primes` primes.
fn bounded_nullspace(rows: &[IntRow], ncols: usize, max_primes: usize) -> Option<ExactMatrix> {
    let mut acc: Option<Accumulator> = None;
    let mut next_attempt = 1;
    for p in primes().take(max_primes) {
        let e = modular_echelon(reduce_rows(rows, p), ncols, p, true);
        match &mut acc {
            None => acc = Some(Accumulator::start(&e, ncols, p)),
            Some(a) => match compare(&e.pivots, &a.pivots) {
                Ordering::Less => {
                    acc = Some(Accumulator::start(&e, ncols, p));
                    next_attempt = 1;
                }
                Ordering::Greater => continue,
                Ordering::Equal => a.absorb(&e, p),
            },
        }
        let a = acc.as_ref().expect("set above");
        if a.primes_used < next_attempt {
            continue;
        }
        next_attempt = 2 * a.primes_used;
        if let Some(block) = a.reconstruct() {
            if verify(rows, &a.pivots, &a.free, &block) {
                log::debug!("rational kernel from {} primes", a.primes_used);
                return Some(assemble(&a.pivots, &a.free, ncols, block));
            }
        }
    }
    None
}

/// Exact rank of an integer system, or `None` when certifying it would
/// take more than `max_primes` primes.
///
/// The rank modulo a prime never exceeds the rational rank, so a full rank
/// modulo one prime is final. Otherwise the smaller of the two kernels is
/// reconstructed and checked exactly, which bounds the rank from above.
pub(crate) fn multimodular_rank(rows: &[IntRow], ncols: usize, max_primes: usize) -> Option<usize> {
    let nrows = rows.len();
    let p = primes().next().expect("primes exist");
    let lower = modular_echelon(reduce_rows(rows, p), ncols, p, false).rank();
    if lower == nrows.min(ncols) {
        return Some(lower);
    }
    if ncols - lower <= nrows - lower {
        return bounded_nullspace(rows, ncols, max_primes).map(|k| ncols - k.cols());
    }
    let mut columns: Vec<IntRow> = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row {
            columns[*c].push((r, v.clone()));
        }
    }
    bounded_nullspace(&columns, nrows, max_primes).map(|k| nrows - k.cols())
}

/// Better pivot lists sort first: more pivots, then earlier pivots.
fn compare(a: &[usize], b: &[usize]) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}

fn assemble(pivots: &[usize], free: &[usize], ncols: usize, block: Vec<BigRational>) -> ExactMatrix {
    let w = free.len();
    let mut out = ExactMatrix::zeros(ncols, w, Field::Rational);
    for (j, &c) in free.iter().enumerate() {
        out.set(c, j, Field::Rational.one());
    }
    for (k, q) in block.into_iter().enumerate() {
        if !q.is_zero() {
            out.set(pivots[k / w], k % w, Scalar::Rational(q));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::elim::integer_echelon;
    use crate::linalg::sparse_integer_nullspace;
    use rand::{Rng, SeedableRng};

    fn sparse(dense: &[Vec<i64>]) -> Vec<IntRow> {
        dense
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, BigInt::from(v))).collect())
            .collect()
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_003u64);
        let bound = (&m >> 1usize).sqrt();
        // 2/3 mod m
        let u = (BigInt::from(2) * BigInt::from(666_669u64)).mod_floor(&m);
        assert_eq!(rational_reconstruction(&u, &m, &bound), Some(BigRational::new(2.into(), 3.into())));
        let minus: BigInt = &m - BigInt::from(5);
        assert_eq!(rational_reconstruction(&minus, &m, &bound), Some(BigRational::from_integer((-5).into())));
    }

    #[test]
    fn agrees_with_fraction_free_elimination() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let nr = rng.gen_range(1..7);
            let nc = rng.gen_range(1..9);
            let rank_cap = rng.gen_range(1..=nr);
            // Product of random factors so that the rank is often deficient.
            let left: Vec<Vec<i64>> = (0..nr).map(|_| (0..rank_cap).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            let right: Vec<Vec<i64>> = (0..rank_cap).map(|_| (0..nc).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            let dense: Vec<Vec<i64>> = (0..nr)
                .map(|i| (0..nc).map(|j| (0..rank_cap).map(|k| left[i][k] * right[k][j]).sum()).collect())
                .collect();
            let rows = sparse(&dense);
            assert_eq!(multimodular_nullspace(&rows, nc), sparse_integer_nullspace(rows.clone(), nc), "{dense:?}");
            let exact = integer_echelon(rows.clone(), nc, false).rank();
            assert_eq!(multimodular_rank(&rows, nc, MAX_PRIMES), Some(exact), "{dense:?}");
        }
    }

    #[test]
    fn rank_survives_an_unlucky_prime() {
        let p = primes().next().unwrap() as i64;
        let rows = sparse(&[vec![p, 0], vec![0, 1]]);
        assert_eq!(multimodular_rank(&rows, 2, MAX_PRIMES), Some(2));
        let rows = sparse(&[vec![p, 2 * p, 1], vec![1, 2, 0], vec![p + 1, 2 * p + 2, 1]]);
        assert_eq!(multimodular_rank(&rows, 3, MAX_PRIMES), Some(2));
    }

    #[test]
    fn rank_gives_up_within_budget() {
        let big = 1i64 << 40;
        let dense = vec![vec![big + 1, big - 3, 7], vec![2 * (big + 1), 2 * (big - 3), 14], vec![3, big, -(big - 1)]];
        let rows = sparse(&dense);
        assert_eq!(multimodular_rank(&rows, 3, 1), None);
        assert_eq!(multimodular_rank(&rows, 3, MAX_PRIMES), Some(2));
    }

    #[test]
    fn large_entries_need_several_primes() {
        let big = 1i64 << 40;
        let dense = vec![vec![big + 1, big - 3, 7], vec![3, big, -(big - 1)]];
        let rows = sparse(&dense);
        assert_eq!(multimodular_nullspace(&rows, 3), sparse_integer_nullspace(rows.clone(), 3));
    }

    #[test]
    fn empty_system() {
        let k = multimodular_nullspace(&[], 3);
        assert_eq!(k, ExactMatrix::identity(3, Field::Rational));
    }
}

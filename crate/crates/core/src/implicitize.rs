//! Implicit equations by interpolation: sample exact points on the image of
//! a parametrization and solve for the forms of a given degree vanishing on
//! all of them. Independent of the syzygy construction, so it serves as an
//! oracle for it.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::{Exponent, MultiPoly, MAX_VARS};
use crate::lattice::convex_hull;
use crate::linalg::{multimodular_nullspace, reduce_bigint, sparse_modular_rank, DEFAULT_PRIME};
use crate::poly::Parametrization;
use crate::repmat::SurfacePoint;
use crate::sampling::{random_rational, rng};

/// Parameter numerators are drawn from `[-PARAM_NUM_BOUND, PARAM_NUM_BOUND]`.
pub const PARAM_NUM_BOUND: i64 = 10_000;
const PARAM_DEN_BOUND: i64 = 16;

/// Extra rows beyond the number of unknowns.
pub const OVERSAMPLING: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicitForm {
    pub degree: u32,
    /// Primitive, positive grlex-leading coefficient.
    pub poly: MultiPoly,
}

impl ImplicitForm {
    /// Coefficients against [`monomials`]`(degree)`.
    pub fn coefficients(&self) -> Vec<BigInt> {
        monomials(self.degree).iter().map(|e| self.poly.coefficient(e)).collect()
    }

    pub fn vanishes_at(&self, p: &SurfacePoint) -> bool {
        self.poly.evaluate(p.coords()).is_zero()
    }
}

/// Degree-`degree` monomials in `T_1..T_4`, grlex-greatest first.
pub fn monomials(degree: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            for c in (0..=degree - a - b).rev() {
                out.push([a, b, c, degree - a - b - c]);
            }
        }
    }
    out
}

/// `C(D + 3, 3)`.
pub fn monomial_count(degree: u32) -> usize {
    let d = degree as usize;
    (d + 1) * (d + 2) * (d + 3) / 6
}

pub fn required_samples(degree: u32) -> usize {
    monomial_count(degree) + OVERSAMPLING
}

/// `count` distinct points `f(s_j, t_j)` at seeded random parameters,
/// together with the parameters.
pub fn sample_with_parameters(
    f: &Parametrization,
    count: usize,
    seed: u64,
) -> Result<Vec<((BigRational, BigRational), SurfacePoint)>> {
    let mut r = rng(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let max_attempts = 10 * count;
    let mut attempts = 0;
    while out.len() < count && attempts < max_attempts {
        attempts += 1;
        let s = random_rational(&mut r, PARAM_NUM_BOUND, PARAM_DEN_BOUND);
        let t = random_rational(&mut r, PARAM_NUM_BOUND, PARAM_DEN_BOUND);
        let Ok(values) = f.evaluate(&s, &t) else { continue };
        let Ok(p) = SurfacePoint::new(values.to_vec()) else { continue };
        if seen.insert(p.clone()) {
            out.push(((s, t), p));
        }
    }
    if out.len() < count {
        return Err(Error::SamplingExhausted { wanted: count, found: out.len(), attempts });
    }
    Ok(out)
}

pub fn sample_surface_points(f: &Parametrization, count: usize, seed: u64) -> Result<Vec<SurfacePoint>> {
    Ok(sample_with_parameters(f, count, seed)?.into_iter().map(|(_, p)| p).collect())
}

fn evaluation_rows(points: &[SurfacePoint], degree: u32) -> Vec<Vec<BigInt>> {
    let mons = monomials(degree);
    points
        .par_iter()
        .map(|p| {
            let x = p.integer_coords();
            let powers: Vec<Vec<BigInt>> = x
                .iter()
                .map(|xi| {
                    let mut v = vec![BigInt::one()];
                    for k in 0..degree as usize {
                        let next = &v[k] * xi;
                        v.push(next);
                    }
                    v
                })
                .collect();
            mons.iter()
                .map(|e| (0..MAX_VARS).fold(BigInt::one(), |acc, i| acc * &powers[i][e[i] as usize]))
                .collect()
        })
        .collect()
}

fn check_points(points: &[SurfacePoint], degree: u32) -> Result<()> {
    let needed = required_samples(degree);
    if points.len() < needed {
        return Err(Error::InsufficientSamples { needed, got: points.len() });
    }
    if let Some(p) = points.iter().find(|p| p.dimension() != 4) {
        return Err(Error::DimensionMismatch(format!("surface points need 4 coordinates, got {}", p.dimension())));
    }
    Ok(())
}

/// Dimension of the space of degree-`degree` forms vanishing on `points`,
/// computed over GF(p). Never smaller than the rational answer.
pub fn vanishing_dimension_mod(points: &[SurfacePoint], degree: u32, p: u64) -> Result<usize> {
    check_points(points, degree)?;
    let rows = evaluation_rows(points, degree)
        .into_iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(c, v)| (c, reduce_bigint(v, p)))
                .filter(|(_, v)| *v != 0)
                .collect()
        })
        .collect();
    let n = monomial_count(degree);
    Ok(n - sparse_modular_rank(rows, n, p))
}

/// Basis of the degree-`degree` forms vanishing on all of `points`, each
/// normalized. Empty when no such form exists.
pub fn interpolate_implicit(points: &[SurfacePoint], degree: u32) -> Result<Vec<ImplicitForm>> {
    check_points(points, degree)?;
    let mons = monomials(degree);
    let rows: Vec<_> = evaluation_rows(points, degree)
        .into_iter()
        .map(|row| row.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    let kernel = multimodular_nullspace(&rows, mons.len());
    let forms = (0..kernel.cols())
        .map(|j| {
            let col: Vec<&BigRational> = (0..mons.len()).map(|r| kernel.rational(r, j).expect("rational kernel")).collect();
            let l = col.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let terms = mons.iter().zip(&col).map(|(e, q)| (*e, q.numer() * (&l / q.denom())));
            ImplicitForm { degree, poly: MultiPoly::from_terms(MAX_VARS, terms).normalized() }
        })
        .collect();
    Ok(forms)
}

/// Finds the least degree `D <= max_degree` at which some form vanishes on
/// samples of `f`: first by rank over GF(2^31 - 1), then by solving over the
/// rationals at that degree. Returns an empty list if there is none.
pub fn find_implicit(f: &Parametrization, max_degree: u32, seed: u64) -> Result<Vec<ImplicitForm>> {
    let points = sample_surface_points(f, required_samples(max_degree), seed)?;
    for degree in 1..=max_degree {
        let sample = &points[..required_samples(degree)];
        if vanishing_dimension_mod(sample, degree, DEFAULT_PRIME)? == 0 {
            continue;
        }
        let forms = interpolate_implicit(sample, degree)?;
        if !forms.is_empty() {
            return Ok(forms);
        }
    }
    Ok(Vec::new())
}

/// Normalized area of `N(f)`: the value of `deg(g) deg(S)` when there are no
/// base points, an upper bound otherwise.
pub fn expected_degree_product(f: &Parametrization) -> u64 {
    let support: Vec<_> = f.joint_support().into_iter().collect();
    convex_hull(&support).expect("parametrization support spans the plane").normalized_area()
}

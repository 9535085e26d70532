//! Representation matrices: evaluation at points of projective space, rank
//! drop membership, sampled maximal-minor gcd, and serialization.
//!
//! A representation matrix is stored as its coefficient matrices
//! `M^(1), ..., M^(k)` so that `M(T) = sum T_i M^(i)`. Surfaces have `k = 4`,
//! plane curves `k = 3`.
//!
//! Membership is an exact rank condition. Rank drops on the surface and, when
//! a base point is not a local complete intersection, possibly also on an
//! extraneous component; this module does not try to tell them apart.

mod serial;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{determinant, MultiPoly};
use crate::lattice::Point;
use crate::linalg::{ExactMatrix, Field, Scalar};
use crate::sampling::{random_rational, rng};

pub(crate) use serial::json_error;
pub use serial::{deserialize, serialize};

/// Largest row count accepted by [`RepresentationMatrix::minor_gcd`].
pub const MINOR_GCD_MAX_ROWS: usize = 12;

const GENERIC_POINTS: usize = 3;
const GENERIC_NUM_BOUND: i64 = 1_000_000;
const GENERIC_DEN_BOUND: i64 = 1_000;

/// A point of projective space with rational coordinates, scaled so that
/// its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfacePoint {
    coords: Vec<BigRational>,
}

impl SurfacePoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        let Some(first) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::InvalidArgument("the zero vector is not a projective point".into()));
        };
        Ok(Self { coords: coords.into_iter().map(|c| c / &first).collect() })
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    /// The primitive integer representative with the same sign pattern.
    pub fn integer_coords(&self) -> Vec<BigInt> {
        let l = self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coords.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub on_surface: bool,
    pub evaluated_rank: usize,
    pub generic_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorGcd {
    /// Primitive, positive grlex-leading coefficient.
    pub gcd: MultiPoly,
    pub minors_used: usize,
    /// Whether the last minor left the gcd unchanged.
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationMatrix {
    nu: u32,
    d: u32,
    polytope: Vec<Point>,
    row_basis: Vec<Point>,
    coeffs: Vec<ExactMatrix>,
}

impl RepresentationMatrix {
    pub fn new(nu: u32, d: u32, polytope: Vec<Point>, row_basis: Vec<Point>, coeffs: Vec<ExactMatrix>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::DimensionMismatch("no coefficient matrices".into()));
        };
        if coeffs.len() > crate::forms::MAX_VARS {
            return Err(Error::DimensionMismatch(format!("{} coefficient matrices", coeffs.len())));
        }
        let (shape, field) = (first.shape(), first.field());
        if coeffs.iter().any(|m| m.shape() != shape || m.field() != field) {
            return Err(Error::DimensionMismatch("coefficient matrices differ in shape or field".into()));
        }
        if row_basis.len() != shape.0 {
            return Err(Error::DimensionMismatch(format!(
                "{} basis points for {} rows",
                row_basis.len(),
                shape.0
            )));
        }
        Ok(Self { nu, d, polytope, row_basis, coeffs })
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn polytope(&self) -> &[Point] {
        &self.polytope
    }

    pub fn row_basis(&self) -> &[Point] {
        &self.row_basis
    }

    pub fn coefficient_matrices(&self) -> &[ExactMatrix] {
        &self.coeffs
    }

    /// Number of projective coordinates `T_i`.
    pub fn variables(&self) -> usize {
        self.coeffs.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.coeffs[0].shape()
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    pub fn is_tall(&self) -> bool {
        let (r, c) = self.shape();
        r > c
    }

    pub(crate) fn warn_if_tall(&self) {
        if self.is_tall() {
            let (r, c) = self.shape();
            log::warn!("representation matrix in degree {} is {r}x{c}: more rows than columns", self.nu);
        }
    }

    /// `sum P_i M^(i)` without projective normalization.
    pub fn evaluate_raw(&self, values: &[BigRational]) -> Result<ExactMatrix> {
        if values.len() != self.variables() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, matrix expects {}",
                values.len(),
                self.variables()
            )));
        }
        let field = self.field();
        let (r, c) = self.shape();
        let mut acc = ExactMatrix::zeros(r, c, field);
        for (m, v) in self.coeffs.iter().zip(values) {
            let s = field.from_rational(v)?;
            if !s.is_zero() {
                acc = acc.add_scaled(&s, m)?;
            }
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &SurfacePoint) -> Result<ExactMatrix> {
        self.evaluate_raw(point.coords())
    }

    /// Maximum rank over a few seeded pseudo-random points.
    pub fn generic_rank(&self, seed: u64) -> usize {
        let mut r = rng(seed);
        let points: Vec<Vec<BigRational>> = (0..GENERIC_POINTS)
            .map(|_| {
                (0..self.variables())
                    .map(|_| random_rational(&mut r, GENERIC_NUM_BOUND, GENERIC_DEN_BOUND))
                    .collect()
            })
            .collect();
        points
            .par_iter()
            .map(|p| self.evaluate_raw(p).map_or(0, |m| m.rank()))
            .max()
            .unwrap_or(0)
    }

    pub fn is_on_surface(&self, point: &SurfacePoint, seed: u64) -> Result<MembershipVerdict> {
        self.membership_against(point, self.generic_rank(seed))
    }

    /// Membership against a precomputed generic rank.
    pub fn membership_against(&self, point: &SurfacePoint, generic_rank: usize) -> Result<MembershipVerdict> {
        let evaluated_rank = self.evaluate(point)?.rank();
        Ok(MembershipVerdict { on_surface: evaluated_rank < generic_rank, evaluated_rank, generic_rank })
    }

    /// Entry `(r, c)` as an integer linear form, after scaling row `r` by
    /// the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<MultiPoly>> {
        let (nr, nc) = self.shape();
        let k = self.variables();
        (0..nr)
            .map(|r| {
                let l = (0..nc)
                    .flat_map(|c| self.coeffs.iter().map(move |m| m.rational(r, c).expect("rational").denom().clone()))
                    .fold(BigInt::one(), |acc, d| acc.lcm(&d));
                (0..nc)
                    .map(|c| {
                        let coeffs: Vec<BigInt> = (0..k)
                            .map(|i| {
                                let q = self.coeffs[i].rational(r, c).expect("rational");
                                q.numer() * (&l / q.denom())
                            })
                            .collect();
                        MultiPoly::linear(&coeffs)
                    })
                    .collect()
            })
            .collect()
    }

    /// The symbolic determinant; the matrix must be square.
    pub fn determinant(&self) -> Result<MultiPoly> {
        let (r, c) = self.shape();
        if r != c {
            return Err(Error::NonSquare { rows: r, cols: c });
        }
        self.require_rational()?;
        Ok(determinant(self.integer_rows()))
    }

    fn require_rational(&self) -> Result<()> {
        if self.field() != Field::Rational {
            return Err(Error::InvalidArgument("symbolic minors need a rational matrix".into()));
        }
        Ok(())
    }

    /// gcd of `sample_count` nonzero maximal minors on seeded random column
    /// subsets. Zero minors are skipped; at most `50 * sample_count` subsets
    /// are tried. The result is a multiple of the gcd of all maximal minors.
    pub fn minor_gcd(&self, sample_count: usize, seed: u64) -> Result<MinorGcd> {
        let (nr, nc) = self.shape();
        if nr > MINOR_GCD_MAX_ROWS {
            return Err(Error::SizeGuard { rows: nr, limit: MINOR_GCD_MAX_ROWS });
        }
        if nr > nc {
            return Err(Error::InvalidArgument(format!("{nr}x{nc} matrix has no maximal minors of size {nr}")));
        }
        if sample_count == 0 {
            return Err(Error::InvalidArgument("sample_count must be positive".into()));
        }
        self.require_rational()?;
        let rows = self.integer_rows();
        let mut r = rng(seed);
        let mut minors: Vec<MultiPoly> = Vec::new();
        let mut attempts = 0;
        while minors.len() < sample_count && attempts < 50 * sample_count {
            let batch = (sample_count - minors.len()).max(1);
            let subsets: Vec<Vec<usize>> = (0..batch)
                .map(|_| {
                    let mut s = index::sample(&mut r, nc, nr).into_vec();
                    s.sort_unstable();
                    s
                })
                .collect();
            attempts += batch;
            let dets: Vec<MultiPoly> = subsets
                .par_iter()
                .map(|cols| determinant(rows.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect()))
                .collect();
            minors.extend(dets.into_iter().filter(|m| !m.is_zero()));
        }
        minors.truncate(sample_count);
        let Some(first) = minors.first() else {
            return Ok(MinorGcd { gcd: MultiPoly::zero(self.variables()), minors_used: 0, stable: false });
        };
        let mut g = first.normalized();
        let mut stable = false;
        for m in &minors[1..] {
            let next = g.gcd(m);
            stable = next == g;
            g = next;
        }
        Ok(MinorGcd { gcd: g, minors_used: minors.len(), stable })
    }

    /// Entry `(r, c)` as the list of coefficients of `T_1, ..., T_k`.
    pub fn entry(&self, r: usize, c: usize) -> Vec<Scalar> {
        self.coeffs.iter().map(|m| m.get(r, c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{embed, EmbeddingChoice};
    use crate::forms::parse_form;
    use crate::poly::{parse_polynomial, Parametrization};
    use crate::syzygy::{curve_matrix, syzygy_matrix};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn example4_matrix() -> RepresentationMatrix {
        let f = Parametrization::parse(["s*t^6+2", "s*t^5-3*s*t^3", "s*t^4+5*s^2*t^6", "2+s^2*t^6"]).unwrap();
        let (_, g) = embed(&f, &EmbeddingChoice::Nprime).unwrap();
        syzygy_matrix(&g, 2, Field::Rational).unwrap()
    }

    #[test]
    fn evaluation_at_basis_vectors() {
        let m = example4_matrix();
        let e1 = SurfacePoint::from_integers(&[1, 0, 0, 0]).unwrap();
        assert_eq!(m.evaluate(&e1).unwrap(), m.coefficient_matrices()[0]);
        let e4 = SurfacePoint::from_integers(&[0, 0, 0, 1]).unwrap();
        assert_eq!(m.evaluate(&e4).unwrap(), m.coefficient_matrices()[3]);
    }

    #[test]
    fn rank_drops_on_the_image_of_one_one() {
        let m = example4_matrix();
        // f(1, 1) = (3, -2, 6, 3)
        let p = SurfacePoint::from_integers(&[3, -2, 6, 3]).unwrap();
        assert!(m.evaluate(&p).unwrap().rank() < 17);
        assert_eq!(m.generic_rank(0), 17);
        let v = m.is_on_surface(&p, 0).unwrap();
        assert!(v.on_surface);
        assert_eq!(v.generic_rank, 17);
    }

    #[test]
    fn zero_matrix_has_generic_rank_zero() {
        let z = ExactMatrix::zeros(3, 5, Field::Rational);
        let m = RepresentationMatrix::new(1, 1, vec![], vec![(0, 0), (0, 1), (1, 0)], vec![z.clone(), z.clone(), z.clone(), z])
            .unwrap();
        assert_eq!(m.generic_rank(7), 0);
    }

    #[test]
    fn zero_point_is_rejected() {
        assert!(SurfacePoint::from_integers(&[0, 0, 0, 0]).is_err());
        let p = SurfacePoint::from_integers(&[0, -2, 4, 6]).unwrap();
        assert_eq!(p.coords(), &[q(0), q(1), q(-2), q(-3)]);
        assert_eq!(p.integer_coords(), vec![0.into(), 1.into(), (-2).into(), (-3).into()]);
    }

    #[test]
    fn curve_minor_gcds() {
        let circle = [parse_polynomial("1 - s^2").unwrap(), parse_polynomial("2*s").unwrap(), parse_polynomial("1 + s^2").unwrap()];
        let m = curve_matrix(&circle, 2, 1, Field::Rational).unwrap();
        let g = m.minor_gcd(1, 0).unwrap();
        assert_eq!(g.gcd, parse_form(3, "T1^2 + T2^2 - T3^2").unwrap());
        let det = m.determinant().unwrap();
        assert_eq!(det.normalized(), g.gcd);

        let line = [parse_polynomial("s").unwrap(), parse_polynomial("1").unwrap(), parse_polynomial("s + 1").unwrap()];
        let m = curve_matrix(&line, 1, 0, Field::Rational).unwrap();
        assert_eq!(m.minor_gcd(1, 0).unwrap().gcd, parse_form(3, "T1 + T2 - T3").unwrap());
    }

    #[test]
    fn minor_gcd_guards() {
        let m = example4_matrix();
        assert_eq!(m.minor_gcd(2, 0), Err(Error::SizeGuard { rows: 17, limit: 12 }));
    }
}

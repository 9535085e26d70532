//! Linear syzygies of `g` in a fixed degree and the resulting matrices.
//!
//! In degree `nu` an unknown syzygy is `(h_1, ..., h_4)` with each `h_i` in
//! `A_nu`. The condition `sum h_i g_i = 0` lives in `A_{nu+d}`; since the
//! product of basis monomials `p` and `q` is `p + q`, the constraint entry at
//! row `r` and column `(i, p)` is the coefficient of `g_i` at `r - p`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::embed::{build_embedding, newton_data, EmbeddingChoice, GradedMap};
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::linalg::{
    multimodular_nullspace, reduce_rational, sparse_modular_nullspace, sparse_modular_rank, ExactMatrix, Field,
};
use crate::poly::{BivariatePolynomial, Parametrization};
use crate::repmat::RepresentationMatrix;

/// The linear system whose kernel is `Syz(g)_nu`.
#[derive(Clone, Debug)]
pub struct SyzygySystem {
    nu: u32,
    generators: usize,
    row_basis: Arc<Vec<Point>>,
    col_basis: Arc<Vec<Point>>,
    /// Sparse rows, sorted by column.
    rows: Vec<Vec<(usize, BigRational)>>,
}

impl SyzygySystem {
    pub fn assemble(g: &GradedMap, nu: u32) -> Self {
        let e = g.embedding();
        let col_basis = e.graded_basis(nu);
        let row_basis = e.graded_basis(nu + g.d());
        let gen_basis = e.graded_basis(g.d());
        let row_index: HashMap<Point, usize> = row_basis.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut rows = vec![Vec::new(); row_basis.len()];
        for i in 0..4 {
            let terms: Vec<(Point, &BigRational)> = gen_basis
                .iter()
                .zip(g.coefficients(i))
                .filter(|(_, c)| !c.is_zero())
                .map(|(&q, c)| (q, c))
                .collect();
            for (j, &p) in col_basis.iter().enumerate() {
                let col = i * col_basis.len() + j;
                for &(q, c) in &terms {
                    let r = row_index[&(p.0 + q.0, p.1 + q.1)];
                    rows[r].push((col, c.clone()));
                }
            }
        }
        Self { nu, generators: 4, row_basis, col_basis, rows }
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    /// `|basis(nu + d)| x 4 |basis(nu)|`.
    pub fn shape(&self) -> (usize, usize) {
        (self.row_basis.len(), self.generators * self.col_basis.len())
    }

    /// Column of the unknown coefficient of `h_i` (0-based) at point `p`.
    pub fn column(&self, i: usize, p: Point) -> Option<usize> {
        let j = self.col_basis.iter().position(|&b| b == p)?;
        (i < self.generators).then_some(i * self.col_basis.len() + j)
    }

    pub fn row_basis(&self) -> &[Point] {
        &self.row_basis
    }

    pub fn col_basis(&self) -> &[Point] {
        &self.col_basis
    }

    pub fn constraint_matrix(&self) -> ExactMatrix {
        let (nr, nc) = self.shape();
        let mut dense = vec![vec![BigRational::zero(); nc]; nr];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                dense[r][*c] = v.clone();
            }
        }
        ExactMatrix::from_rational_rows(dense).expect("rectangular by construction")
    }

    fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.rows
            .iter()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
                row.iter().map(|(c, q)| (*c, q.numer() * (&l / q.denom()))).collect()
            })
            .collect()
    }

    fn modular_rows(&self, p: u64) -> Result<Vec<Vec<(usize, u64)>>> {
        self.rows
            .iter()
            .map(|row| {
                let mut out = Vec::with_capacity(row.len());
                for (c, q) in row {
                    let v = reduce_rational(q, p)?;
                    if v != 0 {
                        out.push((*c, v));
                    }
                }
                Ok(out)
            })
            .collect()
    }

    /// Kernel basis, `4 |basis(nu)| x dim Syz(g)_nu`.
    pub fn nullspace(&self, field: Field) -> Result<ExactMatrix> {
        let (_, nc) = self.shape();
        match field {
            Field::Rational => Ok(multimodular_nullspace(&self.integer_rows(), nc)),
            Field::Prime(p) => Ok(sparse_modular_nullspace(self.modular_rows(p)?, nc, p)),
        }
    }

    pub fn rank_mod(&self, p: u64) -> Result<usize> {
        let (_, nc) = self.shape();
        Ok(sparse_modular_rank(self.modular_rows(p)?, nc, p))
    }
}

/// `2d - alpha(Q)`.
pub fn default_nu(g: &GradedMap) -> u32 {
    2 * g.d() - g.embedding().polygon().alpha()
}

/// The representation matrix `M_nu` of `g`.
pub fn syzygy_matrix(g: &GradedMap, nu: u32, field: Field) -> Result<RepresentationMatrix> {
    let system = SyzygySystem::assemble(g, nu);
    let kernel = system.nullspace(field)?;
    let b = system.col_basis.len();
    let coeffs = (0..4).map(|i| kernel.select_rows(i * b..(i + 1) * b)).collect();
    let m = RepresentationMatrix::new(
        nu,
        g.d(),
        g.embedding().polygon().vertices().to_vec(),
        system.col_basis.to_vec(),
        coeffs,
    )?;
    m.warn_if_tall();
    Ok(m)
}

/// Shape `(|basis(nu)|, dim Syz(g)_nu)` from a rank computation over GF(p),
/// without materializing the kernel.
pub fn syzygy_shape(g: &GradedMap, nu: u32, p: u64) -> Result<(usize, usize)> {
    Field::prime(p)?;
    let system = SyzygySystem::assemble(g, nu);
    let (_, nc) = system.shape();
    let rank = system.rank_mod(p)?;
    Ok((system.col_basis.len(), nc - rank))
}

/// Curve case: `c_1, c_2, c_3` in `s` alone, homogenized to degree `dc`
/// with a second variable `u`. The row basis is `s^i u^(nu-i)`, recorded as
/// the exponent pairs `(i, nu - i)`.
pub fn curve_matrix(c: &[BivariatePolynomial; 3], dc: u32, nu: u32, field: Field) -> Result<RepresentationMatrix> {
    if c.iter().all(BivariatePolynomial::is_zero) {
        return Err(Error::InvalidArgument("all curve polynomials are zero".into()));
    }
    let mut coeffs: Vec<Vec<BigRational>> = Vec::with_capacity(3);
    for p in c {
        let mut v = vec![BigRational::zero(); dc as usize + 1];
        for (&(a, b), q) in p.terms() {
            if b != 0 || a < 0 || a > dc as i64 {
                return Err(Error::InvalidArgument(format!(
                    "curve polynomial {p} must be in s alone with degree at most {dc}"
                )));
            }
            v[a as usize] = q.clone();
        }
        coeffs.push(v);
    }
    let width = nu as usize + 1;
    let nrows = (nu + dc) as usize + 1;
    let mut rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); nrows];
    for (i, ci) in coeffs.iter().enumerate() {
        for j in 0..width {
            for (k, q) in ci.iter().enumerate() {
                if !q.is_zero() {
                    rows[j + k].push((i * width + j, q.clone()));
                }
            }
        }
    }
    let system = SyzygySystem {
        nu,
        generators: 3,
        row_basis: Arc::new((0..nrows as i64).map(|i| (i, (nu + dc) as i64 - i)).collect()),
        col_basis: Arc::new((0..width as i64).map(|i| (i, nu as i64 - i)).collect()),
        rows,
    };
    let kernel = system.nullspace(field)?;
    let blocks = (0..3).map(|i| kernel.select_rows(i * width..(i + 1) * width)).collect();
    let m = RepresentationMatrix::new(nu, dc, vec![(1, 0), (0, 1)], system.col_basis.to_vec(), blocks)?;
    m.warn_if_tall();
    Ok(m)
}

/// Builds `M` over `(Q, d)` in degree `d * nuhat` and over `(d Q, 1)` in
/// degree `nuhat`. The complexes agree in these degrees, so the shapes must
/// match.
pub fn grading_comparison(
    f: &Parametrization,
    choice: &EmbeddingChoice,
    nuhat: u32,
    field: Field,
) -> Result<(RepresentationMatrix, RepresentationMatrix)> {
    let nd = newton_data(f)?;
    let (q, d) = choice.resolve(&nd)?;
    if d < 2 {
        return Err(Error::InvalidArgument(format!("grading comparison needs d >= 2, got {d}")));
    }
    let fine = build_embedding(f, q.clone(), d)?;
    let coarse = build_embedding(f, q.dilate(d), 1)?;
    Ok((syzygy_matrix(&fine, d * nuhat, field)?, syzygy_matrix(&coarse, nuhat, field)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::embed;
    use crate::poly::parse_polynomial;

    fn example4() -> Parametrization {
        Parametrization::parse(["s*t^6+2", "s*t^5-3*s*t^3", "s*t^4+5*s^2*t^6", "2+s^2*t^6"]).unwrap()
    }

    #[test]
    fn default_nu_examples() {
        let (_, g) = embed(&example4(), &EmbeddingChoice::Nprime).unwrap();
        assert_eq!(default_nu(&g), 2);

        for d in 1..4u32 {
            let big = Parametrization::new([
                parse_polynomial(&format!("s^{d}*t^{d}")).unwrap(),
                parse_polynomial("1").unwrap(),
                parse_polynomial(&format!("s^{d}")).unwrap(),
                parse_polynomial(&format!("t^{d}")).unwrap(),
            ])
            .unwrap();
            let (nd, g) = embed(&big, &EmbeddingChoice::Nprime).unwrap();
            assert_eq!(nd.d, d);
            assert_eq!(default_nu(&g), 2 * d - 1);
        }
    }

    #[test]
    fn constraint_entries_follow_point_differences() {
        let (_, g) = embed(&example4(), &EmbeddingChoice::Nprime).unwrap();
        let sys = SyzygySystem::assemble(&g, 2);
        assert_eq!(sys.shape(), (34, 68));
        let m = sys.constraint_matrix();
        let d_basis = g.embedding().graded_basis(1);
        for (r, &q) in sys.row_basis().iter().enumerate() {
            for (j, &p) in sys.col_basis().iter().enumerate() {
                for i in 0..4 {
                    let diff = (q.0 - p.0, q.1 - p.1);
                    let expected = d_basis
                        .iter()
                        .position(|&b| b == diff)
                        .map_or(BigRational::zero(), |k| g.coefficients(i)[k].clone());
                    let col = sys.column(i, p).unwrap();
                    assert_eq!(col, i * sys.col_basis().len() + j);
                    assert_eq!(m.rational(r, col).unwrap(), &expected);
                }
            }
        }
    }

    #[test]
    fn example4_matrix_shape() {
        let (_, g) = embed(&example4(), &EmbeddingChoice::Nprime).unwrap();
        let m = syzygy_matrix(&g, 2, Field::Rational).unwrap();
        assert_eq!(m.shape(), (17, 34));
        let s = syzygy_shape(&g, 2, crate::linalg::DEFAULT_PRIME).unwrap();
        assert_eq!(s, (17, 34));
    }

    #[test]
    fn curve_dimension_bookkeeping() {
        let c = [parse_polynomial("1 - s^2").unwrap(), parse_polynomial("2*s").unwrap(), parse_polynomial("1 + s^2").unwrap()];
        for nu in 1..6u32 {
            let m = curve_matrix(&c, 2, nu, Field::Rational).unwrap();
            // The three homogeneous quadrics have no common root, so the
            // constraint map onto degree nu + 2 is surjective for nu >= 1.
            assert_eq!(m.shape(), (nu as usize + 1, 3 * (nu as usize + 1) - (nu as usize + 3)));
        }
        let line = [parse_polynomial("s").unwrap(), parse_polynomial("1").unwrap(), parse_polynomial("s + 1").unwrap()];
        assert_eq!(curve_matrix(&line, 1, 0, Field::Rational).unwrap().shape(), (1, 1));
        assert!(curve_matrix(&[parse_polynomial("t").unwrap(), parse_polynomial("1").unwrap(), parse_polynomial("s").unwrap()], 1, 0, Field::Rational).is_err());
    }

    #[test]
    fn grading_comparison_requires_homothety() {
        assert!(matches!(
            grading_comparison(&example4(), &EmbeddingChoice::Nprime, 1, Field::Rational),
            Err(Error::InvalidArgument(_))
        ));
        let f = Parametrization::parse(["1 + s^2", "t^2", "s^2*t^2 + s*t", "s^2 - t^2"]).unwrap();
        let (fine, coarse) = grading_comparison(&f, &EmbeddingChoice::Nprime, 1, Field::Rational).unwrap();
        assert_eq!(fine.shape(), coarse.shape());
    }
}

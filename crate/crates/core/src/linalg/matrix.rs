use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::elim::{integer_echelon, modular_echelon, Echelon, IntRow, ModRow};
use super::multimodular::multimodular_rank;
use super::scalar::{mul_mod, reduce_rational, Field, Scalar};
use crate::error::{Error, Result};

/// Primes spent certifying a deficient rational rank before falling back
/// to fraction-free elimination.
const RANK_PRIME_BUDGET: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Entries {
    Rational(Vec<BigRational>),
    Modular { modulus: u64, values: Vec<u64> },
}

/// Dense row-major matrix over the rationals or a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        let n = rows * cols;
        let entries = match field {
            Field::Rational => Entries::Rational(vec![BigRational::zero(); n]),
            Field::Prime(p) => Entries::Modular { modulus: p, values: vec![0; n] },
        };
        Self { rows, cols, entries }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rational_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            entries: Entries::Rational(rows.into_iter().flatten().collect()),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rational_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Row-major residues modulo `p`; values are reduced on entry.
    pub fn from_residues(rows: usize, cols: usize, p: u64, values: Vec<u64>) -> Result<Self> {
        Field::prime(p)?;
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        let values = values.into_iter().map(|v| v % p).collect();
        Ok(Self { rows, cols, entries: Entries::Modular { modulus: p, values } })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> Field {
        match &self.entries {
            Entries::Rational(_) => Field::Rational,
            Entries::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        let i = r * self.cols + c;
        match &self.entries {
            Entries::Rational(v) => Scalar::Rational(v[i].clone()),
            Entries::Modular { modulus, values } => Scalar::Residue { value: values[i], modulus: *modulus },
        }
    }

    /// Borrowed rational entry; `None` for prime-field matrices.
    pub fn rational(&self, r: usize, c: usize) -> Option<&BigRational> {
        match &self.entries {
            Entries::Rational(v) => Some(&v[r * self.cols + c]),
            Entries::Modular { .. } => None,
        }
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        let i = r * self.cols + c;
        match (&mut self.entries, value) {
            (Entries::Rational(v), Scalar::Rational(q)) => v[i] = q,
            (Entries::Modular { modulus, values }, Scalar::Residue { value, modulus: p }) if *modulus == p => {
                values[i] = value
            }
            (_, value) => panic!("cannot store a {} scalar in a {} matrix", value.field(), self.field()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            Entries::Rational(v) => v.iter().all(Zero::is_zero),
            Entries::Modular { values, .. } => values.iter().all(|&x| x == 0),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.field());
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field() != other.field() {
            return Err(Error::DimensionMismatch("operands over different fields".into()));
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        Ok(match (&self.entries, &other.entries) {
            (Entries::Rational(a), Entries::Rational(b)) => {
                let mut out = vec![BigRational::zero(); n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = &a[i * k + l];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            let y = &b[l * m + j];
                            if !y.is_zero() {
                                out[i * m + j] += x * y;
                            }
                        }
                    }
                }
                Self { rows: n, cols: m, entries: Entries::Rational(out) }
            }
            (Entries::Modular { modulus: p, values: a }, Entries::Modular { values: b, .. }) => {
                let p = *p;
                let mut out = vec![0u64; n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = a[i * k + l];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..m {
                            out[i * m + j] = (out[i * m + j] + mul_mod(x, b[l * m + j], p)) % p;
                        }
                    }
                }
                Self { rows: n, cols: m, entries: Entries::Modular { modulus: p, values: out } }
            }
            _ => unreachable!(),
        })
    }

    /// `self + factor * other`, entrywise.
    pub fn add_scaled(&self, factor: &Scalar, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.shape() != other.shape() || self.field() != other.field() {
            return Err(Error::DimensionMismatch("add_scaled operands differ in shape or field".into()));
        }
        let mut out = self.clone();
        match (&mut out.entries, &other.entries, factor) {
            (Entries::Rational(a), Entries::Rational(b), Scalar::Rational(f)) => {
                if !f.is_zero() {
                    for (x, y) in a.iter_mut().zip(b) {
                        if !y.is_zero() {
                            *x += f * y;
                        }
                    }
                }
            }
            (Entries::Modular { modulus: p, values: a }, Entries::Modular { values: b, .. }, Scalar::Residue { value: f, modulus: q })
                if p == q =>
            {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = (*x + mul_mod(*f, *y, *p)) % *p;
                }
            }
            _ => return Err(Error::DimensionMismatch("scalar from a different field".into())),
        }
        Ok(out)
    }

    /// Image of a rational matrix in GF(p).
    pub fn reduce_mod(&self, p: u64) -> Result<ExactMatrix> {
        Field::prime(p)?;
        match &self.entries {
            Entries::Rational(v) => {
                let values = v.iter().map(|q| reduce_rational(q, p)).collect::<Result<Vec<_>>>()?;
                Ok(Self { rows: self.rows, cols: self.cols, entries: Entries::Modular { modulus: p, values } })
            }
            Entries::Modular { modulus, .. } if *modulus == p => Ok(self.clone()),
            Entries::Modular { .. } => Err(Error::DimensionMismatch("matrix is over a different prime".into())),
        }
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> ExactMatrix {
        assert!(range.end <= self.rows);
        let (a, b) = (range.start * self.cols, range.end * self.cols);
        let entries = match &self.entries {
            Entries::Rational(v) => Entries::Rational(v[a..b].to_vec()),
            Entries::Modular { modulus, values } => Entries::Modular { modulus: *modulus, values: values[a..b].to_vec() },
        };
        Self { rows: range.len(), cols: self.cols, entries }
    }

    pub fn select_columns(&self, cols: &[usize]) -> ExactMatrix {
        let mut out = Self::zeros(self.rows, cols.len(), self.field());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Exact rank over the matrix's field.
    pub fn rank(&self) -> usize {
        if let Entries::Rational(_) = &self.entries {
            if let Some(r) = multimodular_rank(&self.integer_rows(), self.cols, RANK_PRIME_BUDGET) {
                return r;
            }
        }
        self.echelon(false).rank()
    }

    /// Basis of the right kernel as the columns of a `cols x (cols - rank)`
    /// matrix. Column `j` is the kernel vector that is 1 at the `j`-th free
    /// (non-pivot) coordinate and 0 at the other free coordinates.
    pub fn nullspace(&self) -> ExactMatrix {
        let echelon = self.echelon(true);
        kernel_from_rref(&echelon, self.cols)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        match &self.entries {
            Entries::Rational(_) => {
                // Clear denominators row by row: det(A) = det(D A) / prod(D).
                let mut scale = BigInt::one();
                let rows: Vec<Vec<BigInt>> = (0..self.rows)
                    .map(|r| {
                        let (ints, l) = self.integer_row_dense(r);
                        scale *= l;
                        ints
                    })
                    .collect();
                let det = bareiss_determinant(rows);
                Ok(Scalar::Rational(BigRational::new(det, scale)))
            }
            Entries::Modular { modulus, values } => Ok(Scalar::Residue {
                value: modular_determinant(values.clone(), self.rows, *modulus),
                modulus: *modulus,
            }),
        }
    }

    fn integer_row_dense(&self, r: usize) -> (Vec<BigInt>, BigInt) {
        let row = match &self.entries {
            Entries::Rational(v) => &v[r * self.cols..(r + 1) * self.cols],
            Entries::Modular { .. } => unreachable!(),
        };
        let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints = row.iter().map(|q| q.numer() * (&l / q.denom())).collect();
        (ints, l)
    }

    /// Rows scaled to integers, as sparse rows.
    fn integer_rows(&self) -> Vec<IntRow> {
        (0..self.rows)
            .map(|r| {
                let (ints, _) = self.integer_row_dense(r);
                ints.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect()
    }

    fn echelon(&self, reduced: bool) -> EchelonForm {
        match &self.entries {
            Entries::Rational(_) => EchelonForm::Integer(integer_echelon(self.integer_rows(), self.cols, reduced)),
            Entries::Modular { modulus, values } => {
                let rows: Vec<ModRow> = values
                    .chunks(self.cols.max(1))
                    .take(self.rows)
                    .map(|row| row.iter().copied().enumerate().filter(|&(_, v)| v != 0).collect())
                    .collect();
                EchelonForm::Modular(modular_echelon(rows, self.cols, *modulus, reduced), *modulus)
            }
        }
    }
}

pub(crate) enum EchelonForm {
    Integer(Echelon<BigInt>),
    Modular(Echelon<u64>, u64),
}

impl EchelonForm {
    pub fn rank(&self) -> usize {
        match self {
            EchelonForm::Integer(e) => e.rank(),
            EchelonForm::Modular(e, _) => e.rank(),
        }
    }
}

/// Kernel basis of a sparse integer system by fraction-free elimination.
#[cfg(test)]
pub(crate) fn sparse_integer_nullspace(rows: Vec<IntRow>, ncols: usize) -> ExactMatrix {
    kernel_from_rref(&EchelonForm::Integer(integer_echelon(rows, ncols, true)), ncols)
}

pub(crate) fn sparse_modular_nullspace(rows: Vec<ModRow>, ncols: usize, p: u64) -> ExactMatrix {
    kernel_from_rref(&EchelonForm::Modular(modular_echelon(rows, ncols, p, true), p), ncols)
}

pub(crate) fn sparse_modular_rank(rows: Vec<ModRow>, ncols: usize, p: u64) -> usize {
    modular_echelon(rows, ncols, p, false).rank()
}

fn kernel_from_rref(echelon: &EchelonForm, ncols: usize) -> ExactMatrix {
    match echelon {
        EchelonForm::Integer(e) => {
            let free = e.free_columns(ncols);
            let index: std::collections::HashMap<usize, usize> =
                free.iter().enumerate().map(|(j, &c)| (c, j)).collect();
            let mut out = ExactMatrix::zeros(ncols, free.len(), Field::Rational);
            for (j, &c) in free.iter().enumerate() {
                out.set(c, j, Field::Rational.one());
            }
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                let lead = &row[0].1;
                for (c, v) in &row[1..] {
                    let j = index[c];
                    out.set(pc, j, Scalar::Rational(BigRational::new(-v.clone(), lead.clone())));
                }
            }
            out
        }
        EchelonForm::Modular(e, p) => {
            let p = *p;
            let free = e.free_columns(ncols);
            let index: std::collections::HashMap<usize, usize> =
                free.iter().enumerate().map(|(j, &c)| (c, j)).collect();
            let mut values = vec![0u64; ncols * free.len()];
            let w = free.len();
            for (j, &c) in free.iter().enumerate() {
                values[c * w + j] = 1;
            }
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                for &(c, v) in &row[1..] {
                    values[pc * w + index[&c]] = (p - v) % p;
                }
            }
            ExactMatrix { rows: ncols, cols: w, entries: Entries::Modular { modulus: p, values } }
        }
    }
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn modular_determinant(mut a: Vec<u64>, n: usize, p: u64) -> u64 {
    let mut det = 1u64;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| a[r * n + k] != 0) else {
            return 0;
        };
        if r != k {
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            det = (p - det) % p;
        }
        let pivot = a[k * n + k];
        det = mul_mod(det, pivot, p);
        let inv = super::scalar::inv_mod(pivot, p);
        for i in k + 1..n {
            let f = mul_mod(a[i * n + k], inv, p);
            if f == 0 {
                continue;
            }
            for j in k..n {
                let sub = mul_mod(f, a[k * n + j], p);
                a[i * n + j] = (a[i * n + j] + p - sub) % p;
            }
        }
    }
    det
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

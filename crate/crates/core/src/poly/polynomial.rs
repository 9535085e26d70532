use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::linalg::{Field, Scalar};

/// Sparse Laurent polynomial in `s` and `t` with rational coefficients.
///
/// Keys are exponent pairs `(a, b)` for the monomial `s^a t^b`; zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<Point, BigRational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial((0, 0), c)
    }

    pub fn monomial(exponent: Point, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { terms }
    }

    pub fn s() -> Self {
        Self::monomial((1, 0), BigRational::one())
    }

    pub fn t() -> Self {
        Self::monomial((0, 1), BigRational::one())
    }

    /// Builds from `(exponent, coefficient)` pairs, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Point, BigRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Point, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Point, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: Point) -> Option<&BigRational> {
        self.terms.get(&e)
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> BTreeSet<Point> {
        self.terms.keys().copied().collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect() }
    }

    /// Multiplies by `s^dx t^dy`.
    pub fn shift(&self, (dx, dy): Point) -> Self {
        Self { terms: self.terms.iter().map(|(&(a, b), v)| ((a + dx, b + dy), v.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(BigRational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a monomial, `None` otherwise.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if !self.is_monomial() {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next()?;
        Some(Self::monomial((-a, -b), c.recip()))
    }

    pub fn evaluate(&self, s: &BigRational, t: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            if (a < 0 && s.is_zero()) || (b < 0 && t.is_zero()) {
                return Err(Error::DivisionByZero);
            }
            acc += c * rational_pow(s, a) * rational_pow(t, b);
        }
        Ok(acc)
    }

    /// Evaluation at field elements (rational or prime field).
    pub fn evaluate_scalar(&self, s: &Scalar, t: &Scalar) -> Result<Scalar> {
        let field = s.field();
        if field != t.field() {
            return Err(Error::InvalidArgument("arguments from different fields".into()));
        }
        let mut acc = field.zero();
        for (&(a, b), c) in &self.terms {
            let term = &(&field.from_rational(c)? * &scalar_pow(s, a)?) * &scalar_pow(t, b)?;
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn max_degree_in_s(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.0).max()
    }
}

fn rational_pow(x: &BigRational, e: i64) -> BigRational {
    let e = i32::try_from(e).expect("exponent fits in i32");
    num_traits::Pow::pow(x, e)
}

fn scalar_pow(x: &Scalar, e: i64) -> Result<Scalar> {
    let base = if e < 0 { x.inverse()? } else { x.clone() };
    let mut k = e.unsigned_abs();
    let mut acc = x.field().one();
    let mut b = base;
    while k > 0 {
        if k & 1 == 1 {
            acc = &acc * &b;
        }
        b = &b * &b;
        k >>= 1;
    }
    Ok(acc)
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                out.add_term((a + x, b + y), &(c * d));
            }
        }
        out
    }
}

impl fmt::Display for BivariatePolynomial {
    /// Prints in the parser's grammar, highest exponents first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || (a == 0 && b == 0) {
                factors.push(abs.to_string());
            }
            for (name, e) in [("s", a), ("t", b)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// The four polynomials of a rational map `(s, t) -> (f1 : f2 : f3 : f4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    polys: [BivariatePolynomial; 4],
}

impl Parametrization {
    /// Rejects the all-zero map and maps whose joint support is contained in
    /// a line.
    pub fn new(polys: [BivariatePolynomial; 4]) -> Result<Self> {
        if polys.iter().all(BivariatePolynomial::is_zero) {
            return Err(Error::DegenerateSupport("all four polynomials are zero".into()));
        }
        let p = Self { polys };
        let support: Vec<Point> = p.joint_support().into_iter().collect();
        if !spans_plane(&support) {
            return Err(Error::DegenerateSupport(
                "the joint support does not affinely span the plane".into(),
            ));
        }
        if let Some(m) = p.common_monomial_factor() {
            log::warn!(
                "all polynomials share the monomial factor s^{} t^{}; it is divided out by translation",
                m.0,
                m.1
            );
        }
        Ok(p)
    }

    pub fn parse(texts: [&str; 4]) -> Result<Self> {
        let mut polys: [BivariatePolynomial; 4] = Default::default();
        for (slot, text) in polys.iter_mut().zip(texts) {
            *slot = super::parse_polynomial(text)?;
        }
        Self::new(polys)
    }

    pub fn polys(&self) -> &[BivariatePolynomial; 4] {
        &self.polys
    }

    pub fn joint_support(&self) -> BTreeSet<Point> {
        self.polys.iter().flat_map(|p| p.support()).collect()
    }

    /// The componentwise minimum exponent, when it is not `(0, 0)`.
    pub fn common_monomial_factor(&self) -> Option<Point> {
        let support = self.joint_support();
        let mx = support.iter().map(|e| e.0).min()?;
        let my = support.iter().map(|e| e.1).min()?;
        ((mx, my) != (0, 0)).then_some((mx, my))
    }

    pub fn evaluate(&self, s: &BigRational, t: &BigRational) -> Result<[BigRational; 4]> {
        let mut out: [BigRational; 4] = Default::default();
        for (slot, p) in out.iter_mut().zip(&self.polys) {
            *slot = p.evaluate(s, t)?;
        }
        Ok(out)
    }

    pub fn evaluate_in(&self, field: Field, s: &BigRational, t: &BigRational) -> Result<[Scalar; 4]> {
        let (s, t) = (field.from_rational(s)?, field.from_rational(t)?);
        let mut out: [Scalar; 4] = std::array::from_fn(|_| field.zero());
        for (slot, p) in out.iter_mut().zip(&self.polys) {
            *slot = p.evaluate_scalar(&s, &t)?;
        }
        Ok(out)
    }
}

fn spans_plane(points: &[Point]) -> bool {
    let Some(&o) = points.first() else {
        return false;
    };
    let Some(&a) = points.iter().find(|&&p| p != o) else {
        return false;
    };
    points.iter().any(|&p| {
        let cross = (a.0 - o.0) as i128 * (p.1 - o.1) as i128 - (a.1 - o.1) as i128 * (p.0 - o.0) as i128;
        cross != 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn example4() -> Parametrization {
        Parametrization::parse(["s*t^6+2", "s*t^5-3*s*t^3", "s*t^4+5*s^2*t^6", "2+s^2*t^6"]).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let p = parse_polynomial("s*t^6+2").unwrap();
        assert_eq!(p.evaluate(&q(1), &q(1)).unwrap(), q(3));
        assert_eq!(p.evaluate(&q(2), &q(1)).unwrap(), q(4));
        let f = example4();
        let f2 = &f.polys()[1];
        assert_eq!(f2.evaluate(&q(1), &q(2)).unwrap(), q(8));
    }

    #[test]
    fn laurent_evaluation_at_zero_fails() {
        let p = parse_polynomial("s^-1 + t").unwrap();
        assert_eq!(p.evaluate(&q(0), &q(1)), Err(Error::DivisionByZero));
        assert_eq!(p.evaluate(&q(2), &q(0)).unwrap(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn support_examples() {
        let p = parse_polynomial("s*t^6+2").unwrap();
        assert_eq!(p.support(), BTreeSet::from([(1, 6), (0, 0)]));
        assert!(BivariatePolynomial::zero().support().is_empty());
        let p = parse_polynomial("s*t^5-3*s*t^3").unwrap();
        assert_eq!(p.support(), BTreeSet::from([(1, 5), (1, 3)]));
    }

    #[test]
    fn prime_field_evaluation_agrees() {
        let p = parse_polynomial("3/2*s^2*t - t^3 + 7").unwrap();
        let field = Field::prime(101).unwrap();
        let direct = p.evaluate(&q(5), &q(-4)).unwrap();
        let modular = p.evaluate_scalar(&field.from_i64(5), &field.from_i64(-4)).unwrap();
        assert_eq!(modular, field.from_rational(&direct).unwrap());
    }

    #[test]
    fn degenerate_parametrizations_are_rejected() {
        assert!(matches!(
            Parametrization::parse(["1", "1", "1", "1"]),
            Err(Error::DegenerateSupport(_))
        ));
        assert!(matches!(Parametrization::parse(["s", "s^2", "1", "s^3"]), Err(Error::DegenerateSupport(_))));
        assert!(matches!(Parametrization::parse(["0", "0", "0", "0"]), Err(Error::DegenerateSupport(_))));
    }

    #[test]
    fn common_factor_detection() {
        let p = Parametrization::parse(["s*t", "s^2*t", "s*t^2", "s*t^3"]).unwrap();
        assert_eq!(p.common_monomial_factor(), Some((1, 1)));
        assert_eq!(example4().common_monomial_factor(), None);
    }
}

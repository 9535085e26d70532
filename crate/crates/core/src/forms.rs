//! Polynomials with integer coefficients in the variables `T_1, ..., T_n`
//! (`n <= 4`), with exact division and a recursive gcd.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub const MAX_VARS: usize = 4;

pub type Exponent = [u32; MAX_VARS];

/// Graded lexicographic order: total degree first, then lexicographic with
/// `T_1` the most significant variable.
pub fn grlex(a: &Exponent, b: &Exponent) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert([0; MAX_VARS], c);
        }
        p
    }

    /// `T_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Self::from_terms(nvars, [(e, BigInt::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, BigInt)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            debug_assert!(e[nvars..].iter().all(|&x| x == 0));
            p.add_term(e, c);
        }
        p
    }

    /// The linear form `sum c_i T_i`.
    pub fn linear(coeffs: &[BigInt]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = [0; MAX_VARS];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &Exponent) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_grlex(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.nvars = self.nvars.max(other.nvars);
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars.max(other.nvars));
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut e = *a;
                for k in 0..MAX_VARS {
                    e[k] += b[k];
                }
                out.add_term(e, c * d);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    fn mul_monomial(&self, m: &Exponent, c: &BigInt) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| {
                let mut x = *e;
                for k in 0..MAX_VARS {
                    x[k] += m[k];
                }
                (x, v * c)
            })
            .collect();
        Self { nvars: self.nvars, terms }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Uses the lexicographic leading term.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (dl, dc) = divisor.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars.max(divisor.nvars));
        while let Some((re, rc)) = rem.terms.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            let mut m = [0; MAX_VARS];
            for k in 0..MAX_VARS {
                if re[k] < dl[k] {
                    return None;
                }
                m[k] = re[k] - dl[k];
            }
            let (q, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            rem = rem.sub(&divisor.mul_monomial(&m, &q));
            quot.add_term(m, q);
        }
        Some(quot)
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the integer content and makes the grlex-leading
    /// coefficient positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading_grlex().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (*e, c / &g)).collect() }
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert!(point.len() >= self.nvars, "point has too few coordinates");
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for k in 0..self.nvars {
                if e[k] > 0 {
                    term *= num_traits::pow(point[k].clone(), e[k] as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Coefficients with respect to `T_{v+1}`, lowest power first.
    fn coefficients_in(&self, v: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest[v] = 0;
            out[e[v] as usize].add_term(rest, c.clone());
        }
        out
    }

    fn from_coefficients_in(nvars: usize, v: usize, coeffs: &[MultiPoly]) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e = *e;
                e[v] = k as u32;
                out.add_term(e, x.clone());
            }
        }
        out
    }

    fn main_variable(&self) -> Option<usize> {
        (0..MAX_VARS).rev().find(|&v| self.terms.keys().any(|e| e[v] > 0))
    }

    /// Greatest common divisor, normalized (primitive over Z, positive
    /// grlex-leading coefficient). `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let nvars = self.nvars.max(other.nvars);
        let mut g = gcd_rec(self, other);
        g.nvars = nvars;
        if g.is_zero() {
            return g;
        }
        // gcd_rec keeps the integer content; report the primitive part as
        // the canonical generator when either input is non-constant.
        if g.is_constant() {
            return Self::constant(nvars, BigInt::one());
        }
        g.normalized()
    }
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let v = match (a.main_variable(), b.main_variable()) {
        (None, None) => {
            let g = a.coefficient(&[0; MAX_VARS]).gcd(&b.coefficient(&[0; MAX_VARS]));
            return MultiPoly::constant(a.nvars.max(b.nvars), g);
        }
        (x, y) => x.max(y).expect("some variable occurs"),
    };
    let ca = a.coefficients_in(v);
    let cb = b.coefficients_in(v);
    let cont_a = ca.iter().fold(MultiPoly::zero(a.nvars), |g, c| gcd_rec(&g, c));
    let cont_b = cb.iter().fold(MultiPoly::zero(b.nvars), |g, c| gcd_rec(&g, c));
    let cont = gcd_rec(&cont_a, &cont_b);
    let mut pa: Vec<MultiPoly> = ca.iter().map(|c| c.exact_div(&cont_a).expect("content divides")).collect();
    let mut pb: Vec<MultiPoly> = cb.iter().map(|c| c.exact_div(&cont_b).expect("content divides")).collect();
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    if pb.len() == 1 {
        return cont;
    }
    // Primitive polynomial remainder sequence in T_{v+1}.
    loop {
        let r = pseudo_remainder(&pa, &pb);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return cont;
        }
        let rc = r.iter().fold(MultiPoly::zero(a.nvars), |g, c| gcd_rec(&g, c));
        pa = pb;
        pb = r.iter().map(|c| c.exact_div(&rc).expect("content divides")).collect();
    }
    let nvars = a.nvars.max(b.nvars);
    let pp = MultiPoly::from_coefficients_in(nvars, v, &pb);
    // Make the result primitive in the remaining variables too.
    let pc = pb.iter().fold(MultiPoly::zero(nvars), |g, c| gcd_rec(&g, c));
    let pp = pp.exact_div(&pc).expect("content divides");
    cont.mul(&pp)
}

/// Pseudo-remainder of `a` by `b` as coefficient vectors (lowest power
/// first, trailing zeros trimmed). Empty means zero.
fn pseudo_remainder(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut r: Vec<MultiPoly> = a.to_vec();
    let lb = b.last().expect("nonzero divisor").clone();
    let db = b.len() - 1;
    trim(&mut r);
    while r.len() > db && !r.is_empty() {
        let lr = r.last().expect("nonempty").clone();
        let shift = r.len() - 1 - db;
        let mut next: Vec<MultiPoly> = r.iter().map(|c| c.mul(&lb)).collect();
        for (k, bk) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&bk.mul(&lr));
        }
        r = next;
        trim(&mut r);
    }
    r
}

fn trim(v: &mut Vec<MultiPoly>) {
    while v.last().is_some_and(MultiPoly::is_zero) {
        v.pop();
    }
}

/// Determinant of a square matrix of polynomials by fraction-free
/// (Bareiss) elimination with exact polynomial division.
pub fn determinant(mut a: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = a.len();
    let nvars = a.first().and_then(|r| r.first()).map_or(0, MultiPoly::nvars);
    if n == 0 {
        return MultiPoly::constant(nvars, BigInt::one());
    }
    let mut negate = false;
    let mut prev = MultiPoly::constant(nvars, BigInt::one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return MultiPoly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending grlex order, e.g. `2*T1*T2 - T2*T3 + 3*T4^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Exponent, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            let constant = e.iter().all(|&x| x == 0);
            if !abs.is_one() || constant {
                factors.push(abs.to_string());
            }
            for (k, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("T{}", k + 1)),
                    _ => factors.push(format!("T{}^{x}", k + 1)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Parses the output syntax of `Display` (`T1..T4`, integer coefficients,
/// `*`, `^`, `+`, `-`); products of sums are not supported.
pub fn parse_form(nvars: usize, text: &str) -> Option<MultiPoly> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = MultiPoly::zero(nvars);
    let mut chunks = Vec::new();
    let mut cur = String::new();
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
            chunks.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        chunks.push(cur);
    }
    for chunk in chunks {
        let (sign, body) = match chunk.strip_prefix('-') {
            Some(r) => (-1, r),
            None => (1, chunk.strip_prefix('+').unwrap_or(&chunk)),
        };
        let mut coeff = BigInt::from(sign);
        let mut e = [0u32; MAX_VARS];
        for factor in body.split('*') {
            if let Some(rest) = factor.strip_prefix('T') {
                let (var, pow) = match rest.split_once('^') {
                    Some((v, p)) => (v, p.parse::<u32>().ok()?),
                    None => (rest, 1),
                };
                let k: usize = var.parse().ok()?;
                if k == 0 || k > nvars {
                    return None;
                }
                e[k - 1] += pow;
            } else {
                coeff *= factor.parse::<BigInt>().ok()?;
            }
        }
        out.add_term(e, coeff);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> MultiPoly {
        parse_form(4, s).unwrap()
    }

    #[test]
    fn display_and_parse_round_trip() {
        let p = f("2*T1*T2 - T2*T3 - 3*T1*T4 - 2*T2*T4 + 3*T4^2");
        assert_eq!(p.to_string(), "2*T1*T2 - 3*T1*T4 - T2*T3 - 2*T2*T4 + 3*T4^2");
        assert_eq!(f(&p.to_string()), p);
    }

    #[test]
    fn exact_division() {
        let a = f("T1 + T2");
        let b = f("T1 - 3*T3 + 2");
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert!(prod.exact_div(&f("T1 + 2*T2")).is_none());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = f("2*T1*T2 - T2*T3 - 3*T1*T4 - 2*T2*T4 + 3*T4^2");
        let a = common.mul(&f("T1^2 + T3*T4 - 7")).scale(&BigInt::from(6));
        let b = common.mul(&f("T2 - T4^3 + T1*T3")).scale(&BigInt::from(-4));
        assert_eq!(a.gcd(&b), common.normalized());
        let c = f("T1 + 1");
        assert_eq!(a.gcd(&c), MultiPoly::constant(4, BigInt::one()));
        assert_eq!(a.gcd(&MultiPoly::zero(4)), a.normalized());
    }

    #[test]
    fn gcd_of_powers() {
        let l = f("T1 + T2 - T3");
        let a = l.mul(&l).mul(&f("T4 + 2"));
        let b = l.mul(&l).mul(&l);
        assert_eq!(a.gcd(&b), l.mul(&l));
    }

    #[test]
    fn bareiss_determinant_of_linear_forms() {
        // [[T1, T2], [T3, T4]]
        let m = vec![vec![f("T1"), f("T2")], vec![f("T3"), f("T4")]];
        assert_eq!(determinant(m), f("T1*T4 - T2*T3"));
        let m = vec![
            vec![f("0"), f("T1"), f("1")],
            vec![f("T2"), f("0"), f("T3")],
            vec![f("1"), f("T4"), f("0")],
        ];
        // cofactor expansion: 0 - T1*(0 - T3) + 1*(T2*T4 - 0)
        assert_eq!(determinant(m), f("T1*T3 + T2*T4"));
    }

    #[test]
    fn evaluation() {
        let p = f("T1^2 + T2*T3 - 5");
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(p.evaluate(&[q(2), q(3), q(-1), q(9)]), q(-4));
    }
}

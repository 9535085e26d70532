use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// A prime field. The modulus must be prime and fit in 32 bits so that
    /// products of residues never overflow a `u64`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn default_prime() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(&self) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::Residue { value: 1 % p, modulus: p },
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.into())),
            Field::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Maps a rational into this field. Fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => Ok(Scalar::Residue {
                value: reduce_rational(q, p)?,
                modulus: p,
            }),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An element of either the rationals or a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    fn residue_pair(a: &Scalar, b: &Scalar) -> (u64, u64, u64) {
        match (a, b) {
            (
                Scalar::Residue { value: x, modulus: p },
                Scalar::Residue { value: y, modulus: q },
            ) if p == q => (*x, *y, *p),
            _ => panic!("scalar field mismatch: {} vs {}", a.field(), b.field()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, rhs) {
            return Scalar::Rational(a + b);
        }
        let (x, y, p) = Scalar::residue_pair(self, rhs);
        Scalar::Residue { value: (x + y) % p, modulus: p }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, rhs) {
            return Scalar::Rational(a - b);
        }
        let (x, y, p) = Scalar::residue_pair(self, rhs);
        Scalar::Residue { value: (x + p - y) % p, modulus: p }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, rhs) {
            return Scalar::Rational(a * b);
        }
        let (x, y, p) = Scalar::residue_pair(self, rhs);
        Scalar::Residue { value: mul_mod(x, y, p), modulus: p }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub(crate) fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn reduce_rational(q: &BigRational, p: u64) -> Result<u64> {
    let den = reduce_bigint(q.denom(), p);
    if den == 0 {
        return Err(Error::BadReduction(p));
    }
    Ok(mul_mod(reduce_bigint(q.numer(), p), inv_mod(den, p), p))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

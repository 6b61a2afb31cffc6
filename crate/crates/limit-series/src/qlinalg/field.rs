//! Exact scalars over the two supported coefficient fields: the rationals
//! with arbitrary precision, and prime fields of small characteristic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::QlinalgError;

/// Which field a matrix or subspace lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    /// The field of rational numbers, arbitrary precision.
    Rationals,
    /// The prime field with `p` elements, `p` prime.
    PrimeField(u64),
}

/// An exact field element. `Fp` values are always the canonical residue in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if p == q {
            return true;
        }
        if p % q == 0 {
            return false;
        }
    }
    let mut k = 11u64;
    while k.saturating_mul(k) <= p {
        if p % k == 0 || p % (k + 2) == 0 {
            return false;
        }
        k += 6;
    }
    true
}

/// Modular inverse by extended Euclid; `a` must be a nonzero residue mod `p`.
fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert!(r0 == 1, "cannot invert {} modulo {}", a, p);
    (s0.rem_euclid(p as i128)) as u64
}

impl FieldSpec {
    /// A prime field, checking primality of `p`.
    pub fn prime(p: u64) -> Result<Self, QlinalgError> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(QlinalgError::NotPrime(p))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    /// Number of elements for prime fields, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::PrimeField(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::PrimeField(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(v))),
            FieldSpec::PrimeField(p) => Scalar::Fp((v.rem_euclid(*p as i64)) as u64),
        }
    }

    /// True when `s` is a well-formed element of this field (canonical residue for `Fp`).
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Rationals, Scalar::Rat(_)) => true,
            (FieldSpec::PrimeField(p), Scalar::Fp(v)) => v < p,
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldSpec::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar does not match field {:?}", self),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldSpec::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar does not match field {:?}", self),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldSpec::PrimeField(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar does not match field {:?}", self),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => {
                assert!(!x.is_zero(), "cannot invert zero");
                Scalar::Rat(x.recip())
            }
            (FieldSpec::PrimeField(p), Scalar::Fp(x)) => Scalar::Fp(mod_inv(*x, *p)),
            _ => panic!("scalar does not match field {:?}", self),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// All field elements, ascending; prime fields only.
    pub fn elements(&self) -> Result<Vec<Scalar>, QlinalgError> {
        match self {
            FieldSpec::Rationals => Err(QlinalgError::RequiresFiniteField),
            FieldSpec::PrimeField(p) => Ok((0..*p).map(Scalar::Fp).collect()),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_one(),
            Scalar::Fp(v) => *v == 1,
        }
    }

    /// Parse from the wire form: `"a/b"` or `"a"` for rationals, a residue for prime fields.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Scalar, QlinalgError> {
        match field {
            FieldSpec::Rationals => {
                let (num, den) = match text.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (text, "1"),
                };
                let n: BigInt = num
                    .parse()
                    .map_err(|_| QlinalgError::BadScalar(text.to_string()))?;
                let d: BigInt = den
                    .parse()
                    .map_err(|_| QlinalgError::BadScalar(text.to_string()))?;
                if d.is_zero() {
                    return Err(QlinalgError::BadScalar(text.to_string()));
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            FieldSpec::PrimeField(p) => {
                let v: u64 = text
                    .parse()
                    .map_err(|_| QlinalgError::BadScalar(text.to_string()))?;
                if v >= *p {
                    return Err(QlinalgError::BadScalar(text.to_string()));
                }
                Ok(Scalar::Fp(v))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(x) => {
                // canonical form "a/b", lowest terms, b > 0
                let (n, d) = (x.numer(), x.denom());
                debug_assert!(d.is_positive());
                write!(f, "{}/{}", n, d)
            }
            Scalar::Fp(v) => write!(f, "{}", v),
        }
    }
}

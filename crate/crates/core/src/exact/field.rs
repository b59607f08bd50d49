//! Exact scalars: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Prime used whenever a caller does not pick one.
pub const DEFAULT_PRIME: u64 = 10007;

/// Largest modulus accepted. Keeps every product of two residues inside a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {0} exceeds the supported maximum {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("cannot parse {text:?} as an element of {field}")]
    Parse { text: String, field: Field },
    #[error("mixed fields: expected {expected}, found {found}")]
    Mixed { expected: Field, found: Field },
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    Shape {
        rows: usize,
        cols: usize,
        len: usize,
    },
}

/// The scalar field all exact computations take place in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub enum Field {
    /// The rationals, with arbitrary-precision numerators and denominators.
    Rational,
    /// The prime field with the given odd modulus.
    Prime(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum FieldRepr {
    Q,
    Fp { p: u64 },
}

impl TryFrom<FieldRepr> for Field {
    type Error = FieldError;

    fn try_from(repr: FieldRepr) -> Result<Self, FieldError> {
        match repr {
            FieldRepr::Q => Ok(Field::Rational),
            FieldRepr::Fp { p } => Field::prime(p),
        }
    }
}

impl From<Field> for FieldRepr {
    fn from(field: Field) -> Self {
        match field {
            Field::Rational => FieldRepr::Q,
            Field::Prime(p) => FieldRepr::Fp { p },
        }
    }
}

/// Trial division; the moduli used here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// The prime field of order `p`, rejecting even, composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p > MAX_PRIME {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if p == 2 || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(n.into())),
            Field::Prime(p) => FieldElement::Modular {
                value: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// Residue `value mod p`; for the rationals, the integer `value`.
    pub fn from_u64(&self, value: u64) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(value.into())),
            Field::Prime(p) => FieldElement::Modular {
                value: value % p,
                p,
            },
        }
    }

    /// Parses a decimal integer, or for the rationals also `"a/b"`.
    pub fn parse(&self, text: &str) -> Result<FieldElement, FieldError> {
        let err = || FieldError::Parse {
            text: text.to_string(),
            field: *self,
        };
        let trimmed = text.trim();
        match *self {
            Field::Rational => {
                let (num, den) = match trimmed.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (trimmed, "1"),
                };
                let num = BigInt::from_str(num).map_err(|_| err())?;
                let den = BigInt::from_str(den).map_err(|_| err())?;
                if den.is_zero() {
                    return Err(err());
                }
                Ok(FieldElement::Rational(BigRational::new(num, den)))
            }
            Field::Prime(p) => {
                let n = BigInt::from_str(trimmed).map_err(|_| err())?;
                let r = ((n % p) + p) % p;
                Ok(FieldElement::Modular {
                    value: r.to_u64().ok_or_else(err)?,
                    p,
                })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact scalar. Rationals are kept in lowest terms with positive
/// denominator; residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { value: u64, p: u64 },
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a, p - 2, p)
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Modular { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Modular { value, p } => FieldElement::Modular {
                value: mod_inv(*value, *p),
                p: *p,
            },
        })
    }

    pub fn pow(&self, exp: u32) -> FieldElement {
        match self {
            FieldElement::Rational(q) => {
                FieldElement::Rational(num_traits::pow(q.clone(), exp as usize))
            }
            FieldElement::Modular { value, p } => FieldElement::Modular {
                value: mod_pow(*value, exp as u64, *p),
                p: *p,
            },
        }
    }

    /// Residue in `[0, p)`, `None` for rationals.
    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElement::Modular { value, .. } => Some(*value),
            FieldElement::Rational(_) => None,
        }
    }

    fn check(&self, other: &FieldElement) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic between elements of different fields"
        );
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            FieldElement::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            FieldElement::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Modular { value: a, p }, FieldElement::Modular { value: b, .. }) => {
                FieldElement::Modular {
                    value: (a + b) % p,
                    p: *p,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Modular { value: a, p }, FieldElement::Modular { value: b, .. }) => {
                FieldElement::Modular {
                    value: a * b % p,
                    p: *p,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::Modular { value, p } => FieldElement::Modular {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

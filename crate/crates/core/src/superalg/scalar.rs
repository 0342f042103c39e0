//! Base-field scalars: exact rationals or a prime field chosen at runtime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// The base field. Only fields are supported so that equality and
/// invertibility are decidable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Field::Prime(_))
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p as u64),
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// Characteristic 2 identifies +1 and -1, so Koszul signs are invisible.
    pub fn is_sign_blind(self) -> bool {
        self == Field::Prime(2)
    }

    /// Parses `QQ`, `qq`, `fp:P` or `FP P`.
    pub fn parse(text: &str) -> Result<Field> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("qq") || t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let rest = t
            .strip_prefix("fp:")
            .or_else(|| t.strip_prefix("FP:"))
            .or_else(|| t.strip_prefix("FP "))
            .or_else(|| t.strip_prefix("fp "))
            .ok_or_else(|| Error::Invalid(format!("unknown field `{t}` (expected QQ or fp:P)")))?;
        let p: u64 = rest.trim().parse().map_err(|_| Error::Invalid(format!("bad modulus `{rest}`")))?;
        Field::prime(p)
    }

    /// Every element of a finite field, in ascending representative order.
    pub fn elements(self) -> Result<Vec<Scalar>> {
        match self {
            Field::Rational => Err(Error::InfiniteBase),
            Field::Prime(p) => Ok((0..p).map(|v| Scalar::Prime { value: v, modulus: p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "FP {p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the base field.
///
/// Rationals are kept reduced with positive denominator (guaranteed by
/// `BigRational`); prime-field values are canonical representatives in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_int(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime { value: n.rem_euclid(p as i64) as u32, modulus: p },
        }
    }

    /// `num / den` in `field`; fails when `den` vanishes in the field.
    pub fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match field {
            Field::Rational => {
                if den.is_zero() {
                    return Err(Error::Invalid("zero denominator".into()));
                }
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(p) => {
                let reduce =
                    |n: &BigInt| -> u32 { n.mod_floor(&BigInt::from(p)).to_u32().expect("residue fits in u32") };
                let d = Scalar::Prime { value: reduce(den), modulus: p };
                let inv =
                    d.inverse().ok_or_else(|| Error::DenominatorNotInvertible { den: den.to_string(), modulus: p })?;
                Ok(&Scalar::Prime { value: reduce(num), modulus: p } * &inv)
            }
        }
    }

    /// Maps a rational into `field` (identity for `Field::Rational`).
    pub fn convert(&self, field: Field) -> Result<Scalar> {
        match (self, field) {
            (Scalar::Rational(r), f) => Scalar::from_ratio(f, r.numer(), r.denom()),
            (Scalar::Prime { modulus, .. }, Field::Prime(p)) if *modulus == p => Ok(self.clone()),
            (Scalar::Prime { .. }, _) => {
                Err(Error::Invalid("cannot lift a prime-field scalar to another field".into()))
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rational(r) => Some(Scalar::Rational(r.recip())),
            Scalar::Prime { value, modulus } => {
                // Fermat: v^(p-2)
                let p = *modulus as u64;
                let mut base = *value as u64;
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Some(Scalar::Prime { value: acc as u32, modulus: *modulus })
            }
        }
    }

    /// True when the rendered form needs a leading minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Prime { .. } => false,
        }
    }

    pub(crate) fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            other => other.clone(),
        }
    }

    /// Parses an integer or `a/b` literal into `field`.
    pub fn parse(field: Field, text: &str) -> Result<Scalar> {
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| Error::Invalid(format!("bad scalar literal `{text}`")))?;
        let den: BigInt = den.parse().map_err(|_| Error::Invalid(format!("bad scalar literal `{text}`")))?;
        Scalar::from_ratio(field, &num, &den)
    }

    fn check_same(&self, other: &Scalar) -> u32 {
        match (self, other) {
            (Scalar::Prime { modulus: a, .. }, Scalar::Prime { modulus: b, .. }) if a == b => *a,
            (Scalar::Rational(_), Scalar::Rational(_)) => 0,
            _ => panic!("scalar field mismatch: {:?} vs {:?}", self.field(), other.field()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let p = self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, .. }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { value: ((*a as u64 + *b as u64) % p as u64) as u32, modulus: p }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        let p = self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, .. }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { value: ((*a as u64 * *b as u64) % p as u64) as u32, modulus: p }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => {
                Scalar::Prime { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
        }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

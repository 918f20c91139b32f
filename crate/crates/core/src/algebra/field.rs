use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::AlgebraError;

/// Exact scalar used by every field computation. Over a prime field the value
/// is always an integer in `0..p`.
pub type Scalar = BigRational;

/// Coefficient domain for colorings and Laplacian polynomials.
///
/// `Integers` is a ring; linear algebra over it is carried out in its fraction
/// field, and polynomial gcds are taken in `Z[x^±1]`. `Rationals` shares the
/// integer representation for polynomials (every class has an integral
/// representative by Gauss' lemma).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffField {
    Rationals,
    Integers,
    Prime(u64),
}

impl CoeffField {
    /// `GF(p)`, with `p` checked for primality by trial division.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if is_prime(p) {
            Ok(CoeffField::Prime(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn gf2() -> Self {
        CoeffField::Prime(2)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoeffField::Prime(p) => *p,
            _ => 0,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, CoeffField::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_int(&BigInt::from(v))
    }

    pub fn from_int(&self, v: &BigInt) -> Scalar {
        match self {
            CoeffField::Prime(p) => Scalar::from_integer(v.mod_floor(&BigInt::from(*p))),
            _ => Scalar::from_integer(v.clone()),
        }
    }

    /// Brings an arbitrary rational into canonical form for this field.
    pub fn reduce(&self, v: &Scalar) -> Result<Scalar, AlgebraError> {
        match self {
            CoeffField::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = v.numer().mod_floor(&pb);
                let den = v.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(AlgebraError::NotInvertible);
                }
                let inv = mod_inverse(&den, &pb).ok_or(AlgebraError::NotInvertible)?;
                Ok(Scalar::from_integer((num * inv).mod_floor(&pb)))
            }
            _ => Ok(v.clone()),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.wrap(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.wrap(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.wrap(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.wrap(-a)
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            CoeffField::Prime(p) => {
                let pb = BigInt::from(*p);
                mod_inverse(a.numer(), &pb).map(Scalar::from_integer)
            }
            _ => Some(a.recip()),
        }
    }

    // Sums and products of canonical prime-field values are integers, so a
    // plain floor-mod restores canonical form.
    fn wrap(&self, v: Scalar) -> Scalar {
        match self {
            CoeffField::Prime(p) => {
                debug_assert!(v.is_integer());
                Scalar::from_integer(v.to_integer().mod_floor(&BigInt::from(*p)))
            }
            _ => v,
        }
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffField::Rationals => write!(f, "Q"),
            CoeffField::Integers => write!(f, "Z"),
            CoeffField::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Accepts `q`, `z` and `gf:P`.
impl FromStr for CoeffField {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "q" => Ok(CoeffField::Rationals),
            "z" => Ok(CoeffField::Integers),
            _ => {
                let p = t
                    .strip_prefix("gf:")
                    .and_then(|rest| rest.parse::<u64>().ok())
                    .ok_or_else(|| AlgebraError::BadFieldSpec(s.to_string()))?;
                CoeffField::prime(p)
            }
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(p).extended_gcd(p);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(p))
    } else {
        None
    }
}

/// Formats a scalar the way colorings are printed: integers bare, fractions as `a/b`.
pub fn format_scalar(v: &Scalar) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

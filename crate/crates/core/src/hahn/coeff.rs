use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oag::rational::Rational;

/// Residue field used for series coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffField {
    Rational,
    /// ℤ/p for a prime `p`.
    Prime(u64),
}

impl CoeffField {
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::InvalidValue(format!("{p} is not a prime")));
        }
        Ok(CoeffField::Prime(p))
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffField::Rational => f.write_str("Q"),
            CoeffField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rat(BigRational),
    Mod { value: u64, p: u64 },
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl Coefficient {
    pub fn zero(field: CoeffField) -> Self {
        Coefficient::from_int(field, 0)
    }

    pub fn one(field: CoeffField) -> Self {
        Coefficient::from_int(field, 1)
    }

    pub fn from_int(field: CoeffField, n: i128) -> Self {
        match field {
            CoeffField::Rational => Coefficient::Rat(BigRational::from_integer(BigInt::from(n))),
            CoeffField::Prime(p) => Coefficient::Mod {
                value: n.rem_euclid(p as i128) as u64,
                p,
            },
        }
    }

    /// Image of a rational; fails when the denominator vanishes mod `p`.
    pub fn from_rational(field: CoeffField, q: &Rational) -> Result<Self> {
        match field {
            CoeffField::Rational => Ok(Coefficient::Rat(BigRational::new(
                BigInt::from(*q.numer()),
                BigInt::from(*q.denom()),
            ))),
            CoeffField::Prime(_) => {
                let den = Coefficient::from_int(field, *q.denom());
                Coefficient::from_int(field, *q.numer()).mul(&den.inv()?)
            }
        }
    }

    pub fn field(&self) -> CoeffField {
        match self {
            Coefficient::Rat(_) => CoeffField::Rational,
            Coefficient::Mod { p, .. } => CoeffField::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rat(q) => q.is_zero(),
            Coefficient::Mod { value, .. } => *value == 0,
        }
    }

    fn mismatch(&self, other: &Coefficient) -> Error {
        Error::CoefficientMismatch(format!("{} vs {}", self.field(), other.field()))
    }

    pub fn add(&self, other: &Coefficient) -> Result<Coefficient> {
        match (self, other) {
            (Coefficient::Rat(a), Coefficient::Rat(b)) => Ok(Coefficient::Rat(a + b)),
            (Coefficient::Mod { value: a, p }, Coefficient::Mod { value: b, p: q }) if p == q => {
                Ok(Coefficient::Mod {
                    value: (a + b) % p,
                    p: *p,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn mul(&self, other: &Coefficient) -> Result<Coefficient> {
        match (self, other) {
            (Coefficient::Rat(a), Coefficient::Rat(b)) => Ok(Coefficient::Rat(a * b)),
            (Coefficient::Mod { value: a, p }, Coefficient::Mod { value: b, p: q }) if p == q => {
                Ok(Coefficient::Mod {
                    value: (*a as u128 * *b as u128 % *p as u128) as u64,
                    p: *p,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Coefficient {
        match self {
            Coefficient::Rat(a) => Coefficient::Rat(-a),
            Coefficient::Mod { value, p } => Coefficient::Mod {
                value: (p - value) % p,
                p: *p,
            },
        }
    }

    pub fn inv(&self) -> Result<Coefficient> {
        if self.is_zero() {
            return Err(Error::InvalidValue("zero coefficient has no inverse".into()));
        }
        Ok(match self {
            Coefficient::Rat(a) => Coefficient::Rat(a.recip()),
            Coefficient::Mod { value, p } => Coefficient::Mod {
                value: mod_pow(*value, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rat(a) => a.is_one(),
            Coefficient::Mod { value, .. } => *value == 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Coefficient::Rat(a) if a.is_negative())
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Coefficient::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Coefficient::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oag::rational::rat;

    #[test]
    fn prime_field_inverse() {
        let f = CoeffField::prime(7).unwrap();
        let three = Coefficient::from_int(f, 3);
        assert!(three.mul(&three.inv().unwrap()).unwrap().is_one());
        assert_eq!(Coefficient::from_rational(f, &rat(1, 2)).unwrap(), Coefficient::from_int(f, 4));
        assert!(Coefficient::from_rational(f, &rat(1, 7)).is_err());
        assert!(CoeffField::prime(9).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Coefficient::one(CoeffField::Rational);
        let b = Coefficient::one(CoeffField::Prime(5));
        assert!(matches!(a.add(&b), Err(Error::CoefficientMismatch(_))));
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The base field: the rationals (characteristic 0) or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    characteristic: u32,
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

impl Field {
    pub const RATIONALS: Field = Field { characteristic: 0 };

    /// Prime field of order `p`. Primes up to 2^31 are supported.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(Field { characteristic: p as u32 })
    }

    pub fn from_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(Self::RATIONALS)
        } else {
            Self::prime(c)
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        if self.characteristic == 0 {
            Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
        } else {
            let p = self.characteristic as i64;
            Scalar::Modular {
                value: n.rem_euclid(p) as u32,
                modulus: self.characteristic,
            }
        }
    }

    /// `num / den`; `None` when the denominator vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        if den.is_zero() {
            return None;
        }
        if self.characteristic == 0 {
            return Some(Scalar::Rational(BigRational::new(num.clone(), den.clone())));
        }
        let p = BigInt::from(self.characteristic);
        let reduce = |x: &BigInt| {
            let r = ((x % &p) + &p) % &p;
            r.to_i64().expect("residue fits")
        };
        let d = self.from_i64(reduce(den));
        let inv = d.inverse()?;
        Some(&self.from_i64(reduce(num)) * &inv)
    }

    /// All field elements, for prime fields only.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        if self.characteristic == 0 {
            None
        } else {
            Some((0..self.characteristic as i64).map(|v| self.from_i64(v)).collect())
        }
    }

    /// A pseudorandom element; rationals are drawn from small integers.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        if self.characteristic == 0 {
            self.from_i64(rng.gen_range(-3..=3))
        } else {
            self.from_i64(rng.gen_range(0..self.characteristic as i64))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "Q")
        } else {
            write!(f, "F{}", self.characteristic)
        }
    }
}

/// An exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::RATIONALS,
            Scalar::Modular { modulus, .. } => Field { characteristic: *modulus },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => {
                let p = *modulus as u64;
                Scalar::Modular {
                    value: pow_mod(*value as u64, p - 2, p) as u32,
                    modulus: *modulus,
                }
            }
        })
    }

    /// Residue for prime fields.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Modular { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular { .. } => None,
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{}", value),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $modular:expr) => {
        #[allow(clippy::suspicious_arithmetic_impl)]
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    (
                        Scalar::Modular { value: a, modulus: p },
                        Scalar::Modular { value: b, modulus: q },
                    ) if p == q => Scalar::Modular {
                        value: $modular(*a as u64, *b as u64, *p as u64) as u32,
                        modulus: *p,
                    },
                    _ => panic!("{}", Error::FieldMismatch),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a, b, p| (a + b) % p);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a, b, p| (a + p - b) % p);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, |a, b, p| (a * b) % p);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Integer numerator/denominator, used by the rational root search.
pub(crate) fn rational_parts(r: &BigRational) -> (BigInt, BigInt) {
    (r.numer().clone(), r.denom().clone())
}

pub(crate) fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

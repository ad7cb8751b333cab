//! Exact rational arithmetic and integer root extraction.
//!
//! [`Rat`] wraps an arbitrary-precision reduced fraction. Every formula in the
//! crate is evaluated through it, so divisibility questions ("is this Euler
//! characteristic an integer?") are answered exactly.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of negative integer {0}")]
    NegativeSqrt(BigInt),
    #[error("quadratic is identically zero")]
    IdenticallyZero,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// A reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ExactError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn int(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    /// The value as `i64` when it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rat, ExactError> {
        Rat::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Rat {
        let mut acc = Rat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rat::new(n, d)
            }
            None => Ok(Rat::from(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

/// Serialized as its display string, e.g. `"-5/12"`.
impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::int(v)
    }
}

impl From<i32> for Rat {
    fn from(v: i32) -> Self {
        Rat::int(v as i64)
    }
}

impl From<BigInt> for Rat {
    fn from(v: BigInt) -> Self {
        Rat(BigRational::from_integer(v))
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat((&self.0).$m(rhs.0))
            }
        }
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<i64> for Rat {
            type Output = Rat;
            fn $m(self, rhs: i64) -> Rat {
                self.$m(Rat::int(rhs))
            }
        }
        impl $tr<i64> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: i64) -> Rat {
                self.$m(Rat::int(rhs))
            }
        }
        impl $tr<Rat> for i64 {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat::int(self).$m(rhs)
            }
        }
        impl $tr<&Rat> for i64 {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat::int(self).$m(rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

/// Panics on a zero divisor; use [`Rat::checked_div`] for a recoverable error.
impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div<Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        &self / &rhs
    }
}

impl Div<i64> for Rat {
    type Output = Rat;
    fn div(self, rhs: i64) -> Rat {
        &self / &Rat::int(rhs)
    }
}

impl Div<i64> for &Rat {
    type Output = Rat;
    fn div(self, rhs: i64) -> Rat {
        self / &Rat::int(rhs)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rat> for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign<Rat> for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |a, b| a * b)
    }
}

impl PartialEq<i64> for Rat {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && *self.0.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rat {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.partial_cmp(&Rat::int(*other))
    }
}

/// Binomial coefficient `C(n, k)` for any integer `n`, zero when `k < 0`.
///
/// For negative `n` the polynomial extension `n(n-1)...(n-k+1)/k!` is used.
pub fn binom(n: i64, k: i64) -> Rat {
    if k < 0 {
        return Rat::zero();
    }
    let mut acc = Rat::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Exact square root of a perfect square.
pub fn integer_sqrt(k: &BigInt) -> Result<Option<BigInt>, ExactError> {
    if k.is_negative() {
        return Err(ExactError::NegativeSqrt(k.clone()));
    }
    let s = k.sqrt();
    Ok((&s * &s == *k).then_some(s))
}

/// All integers `z` with `a z^2 + b z + c = 0`, sorted ascending.
pub fn integer_roots_quadratic(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<Vec<BigInt>, ExactError> {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() { Err(ExactError::IdenticallyZero) } else { Ok(vec![]) };
        }
        let (q, rem) = (-c).div_rem(b);
        return Ok(if rem.is_zero() { vec![q] } else { vec![] });
    }
    let disc = b * b - BigInt::from(4) * a * c;
    if disc.is_negative() {
        return Ok(vec![]);
    }
    let Some(s) = integer_sqrt(&disc)? else {
        return Ok(vec![]);
    };
    let two_a = BigInt::from(2) * a;
    let mut roots = Vec::new();
    for num in [-b - &s, -b + &s] {
        let (q, rem) = num.div_rem(&two_a);
        if rem.is_zero() && !roots.contains(&q) {
            roots.push(q);
        }
    }
    roots.sort();
    Ok(roots)
}

/// Convenience wrapper of [`integer_roots_quadratic`] over machine integers.
pub fn integer_roots_quadratic_i64(a: i64, b: i64, c: i64) -> Result<Vec<i64>, ExactError> {
    Ok(integer_roots_quadratic(&a.into(), &b.into(), &c.into())?
        .into_iter()
        .map(|z| z.to_i64().expect("root bounded by coefficients"))
        .collect())
}

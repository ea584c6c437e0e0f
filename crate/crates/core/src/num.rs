//! Exact scalars: arbitrary-precision rationals and half-odd-integers.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `num/den` rendering used by every serialized form.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact rendering: integers without a denominator.
pub fn fmt_rational_short(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn pow(base: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

pub fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Converts an integral rational to `i64`.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// A half-odd-integer `k + 1/2`, stored as its (odd) double.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfInt(i64);

impl HalfInt {
    /// `n + 1/2`.
    pub const fn new(n: i64) -> Self {
        HalfInt(2 * n + 1)
    }

    pub fn from_twice(twice: i64) -> Option<Self> {
        (twice.rem_euclid(2) == 1).then_some(HalfInt(twice))
    }

    pub fn from_rational(r: &Rational) -> Option<Self> {
        let doubled = r * int(2);
        to_i64(&doubled).and_then(Self::from_twice)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn to_rational(self) -> Rational {
        rat(self.0, 2)
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// `self + n` for an integer shift.
    pub fn shift(self, n: i64) -> Self {
        HalfInt(self.0 + 2 * n)
    }

    /// Integer part towards minus infinity, i.e. `k` for `k + 1/2`.
    pub fn floor(self) -> i64 {
        (self.0 - 1) / 2
    }

    /// `self^j` as an exact rational.
    pub fn pow(self, j: u32) -> Rational {
        pow(&self.to_rational(), j)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, n: i64) -> HalfInt {
        self.shift(n)
    }
}

impl Sub<HalfInt> for HalfInt {
    type Output = i64;
    fn sub(self, other: HalfInt) -> i64 {
        (self.0 - other.0) / 2
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

//! Scalar traits shared by the coefficient rings and the operator engine.
//!
//! The operator engine only needs a commutative ring that contains the
//! rationals. [`Field`] is the stricter requirement for the coefficients of
//! a Laurent polynomial, where polynomial division and gcd are needed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// An exact field of characteristic zero.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Num
    + Neg<Output = Self>
    + Signed
    + Send
    + Sync
    + 'static
{
    /// Exact image of a big rational.
    fn from_rational(r: &BigRational) -> Self;

    /// Exact conversion back to a big rational.
    fn to_rational(&self) -> BigRational;
}

impl Field for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

macro_rules! small_ratio_field {
    ($($t:ty),*) => {$(
        impl Field for Ratio<$t> {
            fn from_rational(r: &BigRational) -> Self {
                let n = r.numer().to_i128().and_then(<$t>::from_i128).expect("numerator out of range");
                let d = r.denom().to_i128().and_then(<$t>::from_i128).expect("denominator out of range");
                Ratio::new(n, d)
            }

            fn to_rational(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
        }
    )*};
}

small_ratio_field!(i32, i64, i128);

/// Commutative ring containing the rationals: the coefficient ring of
/// differential operators.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(r: &BigRational) -> Self;

    /// Multiplicative inverse, when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;

    /// The rational value, when the element lies in the image of ℚ.
    fn to_rational(&self) -> Option<BigRational>;

    /// Exact quotient `self / d`, when it exists in the ring.
    fn try_div(&self, d: &Self) -> Option<Self> {
        d.try_inverse().map(|inv| self.clone() * inv)
    }

    fn scale(&self, r: &BigRational) -> Self {
        if r.is_one() {
            self.clone()
        } else {
            self.clone() * Self::from_rational(r)
        }
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
}

impl<T> Scalar for Ratio<T>
where
    Ratio<T>: Field,
    T: Clone + Integer,
{
    fn from_rational(r: &BigRational) -> Self {
        <Self as Field>::from_rational(r)
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(Field::to_rational(self))
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// A half-integer `q`, stored exactly as `2q`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// `true` for `1/2, 3/2, 5/2, …`.
    pub const fn is_positive_half_odd(self) -> bool {
        self.twice > 0 && self.twice % 2 == 1
    }

    /// The integer value, if this is an integer.
    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.twice), BigInt::from(2))
    }

    /// Exact conversion from a rational with denominator 1 or 2.
    pub fn from_rational(r: &BigRational) -> Option<Self> {
        let twice = r * BigRational::from_integer(BigInt::from(2));
        if twice.is_integer() {
            twice.to_integer().to_i64().map(HalfInt::from_twice)
        } else {
            None
        }
    }

    pub fn abs(self) -> Self {
        HalfInt::from_twice(self.twice.abs())
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt::from_twice(self.twice * rhs)
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Shorthand for an exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

//! Coefficient fields.
//!
//! Everything in this crate is exact. The engine is written against the
//! [`Scalar`] trait so the same tables and eliminations run over the
//! rationals and over the Gaussian rationals (used when complexifying the
//! 7-dimensional simple Malcev algebra).

use std::fmt::{self, Debug};
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{NumAssign, One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// `p + q·ε` with `ε² = −1` and `p, q` rational.
pub type GaussianRational = Complex<BigRational>;

/// An exact field of characteristic zero.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + NumAssign
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Characteristic of the field. Every implementation shipped here is 0;
    /// the enveloping-algebra engine refuses anything else.
    const CHARACTERISTIC: u32;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(&Rational::from_integer(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Writes the coefficient for use in front of a monomial, grouping
    /// compound values as `(1 + ε)`.
    fn write_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    /// True when the value is a rational with negative sign, used to print
    /// `a − b` instead of `a + −b`.
    fn is_negative_rational(&self) -> bool;
}

impl Scalar for Rational {
    const CHARACTERISTIC: u32 = 0;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn write_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }

    fn is_negative_rational(&self) -> bool {
        self.is_negative()
    }
}

impl Scalar for GaussianRational {
    const CHARACTERISTIC: u32 = 0;

    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Rational::zero())
    }

    fn write_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            if self.im.is_one() {
                write!(f, "ε")
            } else if (-self.im.clone()).is_one() {
                write!(f, "-ε")
            } else {
                write!(f, "{}ε", self.im)
            }
        } else if self.im.is_negative() {
            write!(f, "({} - {}ε)", self.re, -self.im.clone())
        } else {
            write!(f, "({} + {}ε)", self.re, self.im)
        }
    }

    fn is_negative_rational(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Shorthand for an integer rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn is_zero<F: Scalar>(x: &F) -> bool {
    x.is_zero()
}

pub(crate) fn is_one<F: Scalar>(x: &F) -> bool {
    x.is_one()
}

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::{Error, Result};

/// An angular-momentum quantum number stored losslessly as twice its value,
/// so that `j = 3/2` is `HalfInt { twice: 3 }`.
///
/// Sums like `j + m` are integers exactly when the twice-values have even
/// sum; [`HalfInt::as_integer`] fails loudly instead of truncating.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    /// Builds from twice the value (`from_twice(3)` is 3/2).
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

    pub const fn is_half_odd(self) -> bool {
        self.twice % 2 != 0
    }

    /// Exact conversion to an integer; fails when the value is half-odd.
    pub fn as_integer(self) -> Result<i64> {
        if self.is_integer() {
            Ok(self.twice / 2)
        } else {
            Err(Error::Domain(format!(
                "half-odd-integer {self} used where an integer is required"
            )))
        }
    }

    /// `(-1)^self`; fails when the exponent is not an integer.
    pub fn parity(self) -> Result<i64> {
        Ok(if self.as_integer()? % 2 == 0 { 1 } else { -1 })
    }

    pub const fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    pub const fn is_negative(self) -> bool {
        self.twice < 0
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// Factorial of the value, which must be a nonnegative integer.
    pub fn factorial(self) -> Result<num_bigint::BigInt> {
        super::factorial(self.as_integer()?)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
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

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `p` or `p/2` in lowest terms; no decimals.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(Error::Parse(format!(
                    "half-integer {s:?} must have denominator 2"
                )));
            }
            let n: i64 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad half-integer {s:?}")))?;
            if n % 2 == 0 {
                return Err(Error::Parse(format!("{s:?} is not in lowest terms")));
            }
            Ok(HalfInt::from_twice(n))
        } else {
            let n: i64 = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad half-integer {s:?}")))?;
            Ok(HalfInt::from_int(n))
        }
    }
}

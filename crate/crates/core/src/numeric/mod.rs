//! Exact arithmetic foundation: half-integers, big rationals, signed square
//! roots of rationals and cached combinatorial functions.

mod factorial;
mod halfint;
mod sqrt_rational;

pub use factorial::{binomial, double_factorial, factorial, factorial_big};
pub use halfint::HalfInt;
pub use sqrt_rational::SqrtRational;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type BigRational = num_rational::BigRational;

use num_bigint::BigInt;

/// Rational from an integer.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a rational rendered as `a` or `a/b`.
pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| crate::Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| crate::Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if d == BigInt::from(0) {
        return Err(crate::Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Renders a rational as `a` or `a/b` (denominator omitted when 1).
pub fn render_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when the rational is an integer `<= 0`; such parameters terminate a
/// hypergeometric series.
pub fn is_nonpositive_integer(r: &BigRational) -> bool {
    r.is_integer() && r.numer().sign() != num_bigint::Sign::Plus
}

/// The integer value of a rational known to be integral.
pub fn as_integer(r: &BigRational) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.numer().clone())
    } else {
        None
    }
}

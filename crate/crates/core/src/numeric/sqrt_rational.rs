use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BigRational;
use crate::{Error, Result};

/// Exact value of the form `prefactor * sqrt(radicand)`.
///
/// Canonical form: the radicand is a squarefree nonnegative integer (all
/// square factors extracted into the prefactor, denominator cleared by
/// rescaling) and zero is `0 * sqrt(1)`. Canonical-form identity makes
/// derived equality exact value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtRational {
    prefactor: BigRational,
    radicand: BigUint,
}

// Square factors are extracted by trial division up to this bound, then an
// exact integer square-root check mops up a perfect-square residue. Radicands
// in this crate are products of factorial squarefree parts, so their prime
// factors stay far below the bound.
const TRIAL_BOUND: u64 = 1 << 16;

impl SqrtRational {
    pub fn zero() -> Self {
        SqrtRational { prefactor: BigRational::zero(), radicand: BigUint::one() }
    }

    pub fn one() -> Self {
        SqrtRational { prefactor: BigRational::one(), radicand: BigUint::one() }
    }

    /// `prefactor * sqrt(radicand)` in canonical form; the radicand must be
    /// nonnegative.
    pub fn new(prefactor: BigRational, radicand: BigRational) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::Domain(format!("negative radicand {radicand}")));
        }
        if prefactor.is_zero() || radicand.is_zero() {
            return Ok(Self::zero());
        }
        // p * sqrt(n/d) = (p/d) * sqrt(n*d)
        let n = radicand.numer().magnitude().clone();
        let d = radicand.denom().magnitude().clone();
        let mut pre = prefactor / BigRational::from_integer(BigInt::from(d.clone()));
        let mut rad = n * d;
        let square_root = extract_square_part(&mut rad);
        pre *= BigRational::from_integer(BigInt::from(square_root));
        Ok(SqrtRational { prefactor: pre, radicand: rad })
    }

    /// Exact rational embedded as `r * sqrt(1)`.
    pub fn from_rational(r: BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        SqrtRational { prefactor: r, radicand: BigUint::one() }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(super::rat_int(n))
    }

    /// `sqrt(r)` for `r >= 0`.
    pub fn sqrt_of(r: BigRational) -> Result<Self> {
        Self::new(BigRational::one(), r)
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    pub fn prefactor(&self) -> &BigRational {
        &self.prefactor
    }

    /// Canonical radicand as a rational (always a squarefree integer).
    pub fn radicand(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.radicand.clone()))
    }

    /// Exact product; squarefree radicands multiply via a gcd split, so the
    /// result stays canonical without refactoring.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.radicand.gcd(&other.radicand);
        let rad = (&self.radicand / &g) * (&other.radicand / &g);
        let pre =
            &self.prefactor * &other.prefactor * BigRational::from_integer(BigInt::from(g));
        SqrtRational { prefactor: pre, radicand: rad }
    }

    /// Exact sum, defined only for like radicands (or when a term is zero);
    /// the type is not closed under general addition.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.radicand != other.radicand {
            return Err(Error::IncompatibleRadicands(
                self.radicand.to_string(),
                other.radicand.to_string(),
            ));
        }
        let pre = &self.prefactor + &other.prefactor;
        if pre.is_zero() {
            return Ok(Self::zero());
        }
        Ok(SqrtRational { prefactor: pre, radicand: self.radicand.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.clone().neg())
    }

    /// The exact square `prefactor^2 * radicand`, always rational.
    pub fn square(&self) -> BigRational {
        &self.prefactor * &self.prefactor
            * BigRational::from_integer(BigInt::from(self.radicand.clone()))
    }

    /// Multiplicative inverse; fails on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("division by zero SqrtRational".into()));
        }
        // 1/(p sqrt(r)) = (1/(p r)) sqrt(r)
        let pr = &self.prefactor * BigRational::from_integer(BigInt::from(self.radicand.clone()));
        Ok(SqrtRational { prefactor: pr.recip(), radicand: self.radicand.clone() })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Scales by an exact rational.
    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        if self.is_zero() {
            return Self::zero();
        }
        SqrtRational { prefactor: &self.prefactor * r, radicand: self.radicand.clone() }
    }

    pub fn signum(&self) -> i32 {
        if self.prefactor.is_zero() {
            0
        } else if self.prefactor.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        SqrtRational { prefactor: self.prefactor.abs(), radicand: self.radicand.clone() }
    }

    /// Rounds to a float through `precision_bits` of working precision
    /// (`>= 53`); the result is correct to 1 ulp at that precision before the
    /// final rounding to f64.
    pub fn to_float(&self, precision_bits: u32) -> f64 {
        let bits = precision_bits.max(53) + 8;
        if self.is_zero() {
            return 0.0;
        }
        // |value| = sqrt(p^2 r) = sqrt(A/B) = sqrt(A B) / B with A, B > 0.
        let sq = self.square();
        let a = sq.numer().magnitude().clone();
        let b = sq.denom().magnitude().clone();
        let ab = &a * &b;
        // Scale by an even power of two so the integer sqrt carries `bits`
        // significant bits.
        let have = ab.bits() as i64;
        let shift = (((2 * bits as i64 - have).max(0) + 1) & !1) as u64;
        let scaled = ab << shift;
        let root = scaled.sqrt();
        let denom = BigInt::from(b) << (shift / 2);
        let value = BigRational::new(BigInt::from(root), denom)
            .to_f64()
            .unwrap_or(f64::NAN);
        if self.signum() < 0 {
            -value
        } else {
            value
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float(64)
    }
}

impl Neg for SqrtRational {
    type Output = SqrtRational;
    fn neg(self) -> SqrtRational {
        if self.is_zero() {
            return self;
        }
        SqrtRational { prefactor: -self.prefactor, radicand: self.radicand }
    }
}

impl Mul for &SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: &SqrtRational) -> SqrtRational {
        SqrtRational::mul(self, rhs)
    }
}

/// Removes the largest square divisor of `n`, returning its square root.
fn extract_square_part(n: &mut BigUint) -> BigUint {
    let mut root = BigUint::one();
    if n.is_zero() || n.is_one() {
        return root;
    }
    let mut d = 2u64;
    while d <= TRIAL_BOUND {
        let dd = BigUint::from(d) * BigUint::from(d);
        if &dd > n {
            break;
        }
        while (&*n % &dd).is_zero() {
            *n /= &dd;
            root *= BigUint::from(d);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // Residue beyond the bound: extract it only if it is a perfect square.
    let s = n.sqrt();
    if &(&s * &s) == n {
        root *= &s;
        *n = BigUint::one();
    }
    root
}

/// Rendering grammar shared by the CLI and JSON outputs: `[-]P*sqrt(R)` with
/// rationals rendered `a/b` (denominator omitted when 1) and zero rendered
/// `0`. Values are emitted in sign-square form (`P = ±1`, `R = value^2`), and
/// any grammar-conformant rendering such as `-1/3*sqrt(2)` parses back.
impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sq = self.square();
        let sign = if self.signum() < 0 { "-" } else { "" };
        write!(f, "{sign}1*sqrt({})", super::render_rational(&sq))
    }
}

impl FromStr for SqrtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        match s.split_once("*sqrt(") {
            Some((pre, rest)) => {
                let rad = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced sqrt in {s:?}")))?;
                SqrtRational::new(super::parse_rational(pre)?, super::parse_rational(rad)?)
            }
            None => Ok(Self::from_rational(super::parse_rational(s)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};

    fn sq(p: (i64, i64), r: (i64, i64)) -> SqrtRational {
        SqrtRational::new(rat(p.0, p.1), rat(r.0, r.1)).unwrap()
    }

    #[test]
    fn canonical_form_examples() {
        // sqrt(2)*sqrt(2) = 2
        let s2 = sq((1, 1), (2, 1));
        assert_eq!(s2.mul(&s2), SqrtRational::from_integer(2));
        // coprime radicands stay multiplied
        let s3 = sq((1, 1), (3, 1));
        assert_eq!(s2.mul(&s3), sq((1, 1), (6, 1)));
        // (1/3)sqrt(2) * (3/2)sqrt(8) = 2
        let a = sq((1, 3), (2, 1));
        let b = sq((3, 2), (8, 1));
        assert_eq!(a.mul(&b), SqrtRational::from_integer(2));
    }

    #[test]
    fn denominators_are_cleared() {
        // sqrt(1/3) = (1/3) sqrt(3)
        let v = SqrtRational::sqrt_of(rat(1, 3)).unwrap();
        assert_eq!(v.prefactor(), &rat(1, 3));
        assert_eq!(v.radicand(), rat_int(3));
        // sqrt(4/9) = 2/3 exactly
        let w = SqrtRational::sqrt_of(rat(4, 9)).unwrap();
        assert_eq!(w, SqrtRational::from_rational(rat(2, 3)));
    }

    #[test]
    fn negative_radicand_rejected() {
        assert!(SqrtRational::new(rat_int(1), rat_int(-2)).is_err());
    }

    #[test]
    fn addition_requires_like_radicands() {
        let a = sq((1, 1), (3, 1));
        let b = sq((2, 1), (3, 1));
        assert_eq!(a.add(&b).unwrap(), sq((3, 1), (3, 1)));
        let z = SqrtRational::zero();
        let c = sq((5, 1), (7, 1));
        assert_eq!(c.add(&z).unwrap(), c);
        let d = sq((1, 1), (2, 1));
        assert!(a.add(&d).is_err());
        // exact cancellation collapses to canonical zero
        assert_eq!(a.add(&a.clone().neg()).unwrap(), SqrtRational::zero());
    }

    #[test]
    fn float_conversion() {
        assert_eq!(SqrtRational::one().to_f64(), 1.0);
        assert_eq!(SqrtRational::zero().to_f64(), 0.0);
        let v = SqrtRational::new(rat_int(-1), rat(1, 3)).unwrap();
        assert!((v.to_float(64) - (-0.5773502691896258)).abs() < 1e-15);
        let big = SqrtRational::sqrt_of(rat_int(2)).unwrap();
        assert!((big.to_float(128) - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn rendering_round_trips() {
        let v = SqrtRational::new(rat_int(-1), rat(1, 3)).unwrap();
        assert_eq!(v.to_string(), "-1*sqrt(1/3)");
        assert_eq!(v.to_string().parse::<SqrtRational>().unwrap(), v);
        assert_eq!(SqrtRational::zero().to_string(), "0");
        assert_eq!("0".parse::<SqrtRational>().unwrap(), SqrtRational::zero());
        // free-form grammar input
        let w: SqrtRational = "-1/3*sqrt(2)".parse().unwrap();
        assert_eq!(w, sq((-1, 3), (2, 1)));
        let r: SqrtRational = "5/7".parse().unwrap();
        assert_eq!(r, SqrtRational::from_rational(rat(5, 7)));
    }

    #[test]
    fn recip_and_div() {
        let v = sq((-2, 3), (5, 1));
        let inv = v.recip().unwrap();
        assert_eq!(v.mul(&inv), SqrtRational::one());
        assert!(SqrtRational::zero().recip().is_err());
    }
}

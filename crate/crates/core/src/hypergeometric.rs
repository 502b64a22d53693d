//! Terminating hypergeometric series over exact rationals.
//!
//! Everything here is a finite sum: a series qualifies only if some numerator
//! parameter is a nonpositive integer, and denominator poles are rejected
//! before summation. Beyond plain evaluation the module implements the
//! end-to-start reversal of a terminating series and the Euler
//! transformation, both as *verified* identities (each side is evaluated
//! independently).

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numeric::{as_integer, is_nonpositive_integer, rat_int, BigRational};
use crate::{Error, Result};

/// Parameter lists of a generalized hypergeometric series
/// `F(numerator; denominator; argument)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypParams {
    pub numerator: Vec<BigRational>,
    pub denominator: Vec<BigRational>,
    pub argument: BigRational,
}

impl HypParams {
    pub fn new(
        numerator: Vec<BigRational>,
        denominator: Vec<BigRational>,
        argument: BigRational,
    ) -> Self {
        HypParams { numerator, denominator, argument }
    }

    /// Smallest `n` such that some numerator parameter equals `-n`; the sum
    /// then has exactly `n + 1` terms. When several numerator parameters are
    /// nonpositive integers the smallest magnitude governs termination.
    pub fn termination_index(&self) -> Result<u64> {
        self.numerator
            .iter()
            .filter(|p| is_nonpositive_integer(p))
            .filter_map(|p| p.numer().magnitude().to_u64())
            .min()
            .ok_or_else(|| {
                Error::Domain("series does not terminate: no nonpositive integer numerator".into())
            })
    }

    pub fn eval(&self) -> Result<BigRational> {
        eval_terminating(&self.numerator, &self.denominator, &self.argument)
    }
}

/// Pochhammer symbol `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut f = a.clone();
    for _ in 0..k {
        acc *= &f;
        f += BigRational::one();
    }
    acc
}

/// Evaluates a terminating series `sum_k prod (a_i)_k / prod (b_j)_k * z^k / k!`
/// exactly. Denominator poles inside the summation range are detected before
/// any work and reported with the offending parameter and term index.
pub fn eval_terminating(
    numerator: &[BigRational],
    denominator: &[BigRational],
    z: &BigRational,
) -> Result<BigRational> {
    let params = HypParams::new(numerator.to_vec(), denominator.to_vec(), z.clone());
    let n = params.termination_index()?;
    for b in denominator {
        if let Some(bi) = as_integer(b) {
            if !bi.is_positive() {
                // (b)_k first vanishes at k = |b| + 1
                let pole_at = (-&bi).to_u64().unwrap_or(u64::MAX).saturating_add(1);
                if pole_at <= n {
                    return Err(Error::Pole { param: b.to_string(), index: pole_at as usize });
                }
            }
        }
    }
    let mut sum = BigRational::one();
    let mut term = BigRational::one();
    for k in 0..n {
        let kk = rat_int(k as i64);
        for a in numerator {
            term *= a + &kk;
        }
        for b in denominator {
            term /= b + &kk;
        }
        term *= z;
        term /= rat_int(k as i64 + 1);
        sum += &term;
    }
    Ok(sum)
}

/// Terminating Gauss series `2F1(a, b; c; z)`.
pub fn hyp2f1_terminating(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    z: &BigRational,
) -> Result<BigRational> {
    eval_terminating(&[a.clone(), b.clone()], &[c.clone()], z)
}

/// Terminating `3F2(a1, a2, a3; b1, b2; 1)` at unit argument.
pub fn hyp3f2_unit(
    a1: &BigRational,
    a2: &BigRational,
    a3: &BigRational,
    b1: &BigRational,
    b2: &BigRational,
) -> Result<BigRational> {
    eval_terminating(
        &[a1.clone(), a2.clone(), a3.clone()],
        &[b1.clone(), b2.clone()],
        &BigRational::one(),
    )
}

/// Reverses the order of terms of a terminating series: returns
/// `(prefactor, reversed)` with `value(p) = prefactor * value(reversed)`.
///
/// For `F[-a, (b); (c); z]` the reversed series is
/// `F[-a, 1-a-(c); 1-a-(b); (-1)^(A+B) / z]` with prefactor
/// `((b))_a (-z)^a / ((c))_a`.
pub fn reverse_series(p: &HypParams) -> Result<(BigRational, HypParams)> {
    if p.argument.is_zero() {
        return Err(Error::Domain("series reversal undefined at argument 0".into()));
    }
    let a = p.termination_index()?;
    let minus_a = -rat_int(a as i64);
    // remove one instance of the terminating parameter
    let pos = p
        .numerator
        .iter()
        .position(|x| *x == minus_a)
        .expect("termination index comes from the numerator list");
    let bs: Vec<BigRational> =
        p.numerator.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, x)| x.clone()).collect();
    let cs = p.denominator.clone();

    let mut prefactor = (-&p.argument).pow(a as i32);
    for b in &bs {
        prefactor *= pochhammer(b, a);
    }
    for c in &cs {
        let pc = pochhammer(c, a);
        if pc.is_zero() {
            return Err(Error::Pole { param: c.to_string(), index: a as usize });
        }
        prefactor /= pc;
    }

    let one_minus_a = rat_int(1) - rat_int(a as i64);
    let mut numerator = vec![minus_a];
    numerator.extend(cs.iter().map(|c| &one_minus_a - c));
    let denominator: Vec<BigRational> = bs.iter().map(|b| &one_minus_a - b).collect();
    let sign = if (bs.len() + cs.len()) % 2 == 0 { rat_int(1) } else { rat_int(-1) };
    let argument = sign / &p.argument;

    Ok((prefactor, HypParams::new(numerator, denominator, argument)))
}

/// Checks the Euler transformation
/// `F(a, b; c; z) = (1-z)^(c-a-b) F(c-a, c-b; c; z)` by exact evaluation of
/// both sides.
///
/// Preconditions: the left side terminates (`a` or `b` in `{0, -1, ...}`),
/// the exponent `c-a-b` is an integer, and the right side is exactly
/// evaluable, meaning `c-a` or `c-b` is a negative integer, or `a` or `b` is
/// zero (in which case the right side collapses to a binomial).
pub fn euler_transform_check(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    z: &BigRational,
) -> Result<bool> {
    let exponent = c - a - b;
    let exponent = as_integer(&exponent)
        .ok_or_else(|| Error::Domain(format!("prefactor exponent {} not an integer", c - a - b)))?
        .to_i64()
        .ok_or_else(|| Error::Domain("prefactor exponent overflow".into()))?;
    if !(is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
        return Err(Error::Domain("left side does not terminate".into()));
    }
    let one = BigRational::one();
    let omz = &one - z;
    if omz.is_zero() && exponent < 0 {
        return Err(Error::Domain("prefactor pole at z = 1".into()));
    }

    let lhs = hyp2f1_terminating(a, b, c, z)?;

    let ca = c - a;
    let cb = c - b;
    let negative_int = |r: &BigRational| is_nonpositive_integer(r) && !r.is_zero();
    let rhs_series = if negative_int(&ca) || negative_int(&cb) {
        hyp2f1_terminating(&ca, &cb, c, z)?
    } else if a.is_zero() {
        // F(c, c-b; c; z) = (1-z)^(b-c) with integer b-c
        rational_power(&omz, -as_integer(&cb).unwrap().to_i64().unwrap())?
    } else if b.is_zero() {
        rational_power(&omz, -as_integer(&ca).unwrap().to_i64().unwrap())?
    } else {
        return Err(Error::Domain(
            "right side does not terminate: c-a and c-b are not negative integers".into(),
        ));
    };

    let rhs = rational_power(&omz, exponent)? * rhs_series;
    Ok(lhs == rhs)
}

fn rational_power(base: &BigRational, exp: i64) -> Result<BigRational> {
    if exp < 0 && base.is_zero() {
        return Err(Error::Domain("zero base with negative exponent".into()));
    }
    Ok(base.pow(exp as i32))
}

/// Floating-point terminating `2F1` with integer parameters, used inside
/// quadrature integrands where the argument is a Gauss node. The series
/// terminates, so the finite sum is numerically benign.
pub fn hyp2f1_terminating_f64(a: i64, b: i64, c: i64, z: f64) -> Result<f64> {
    if a > 0 && b > 0 {
        return Err(Error::Domain("series does not terminate".into()));
    }
    let n = if a <= 0 && b <= 0 { (-a).min(-b) } else if a <= 0 { -a } else { -b };
    if c <= 0 && -c < n {
        return Err(Error::Pole { param: c.to_string(), index: (-c + 1) as usize });
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..n {
        term *= (a + k) as f64 * (b + k) as f64 / ((c + k) as f64 * (k + 1) as f64) * z;
        sum += term;
    }
    Ok(sum)
}

/// Exact `(-1)^k`.
pub fn sign_pow(k: i64) -> BigRational {
    if k % 2 == 0 {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

/// Exact `(-1)^k` for a big integer exponent.
pub fn big_sign(k: &BigInt) -> BigRational {
    if (k % BigInt::from(2)).is_zero() {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

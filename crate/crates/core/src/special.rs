//! Classical orthogonal polynomials, Wigner little-d matrices, spherical
//! harmonics, the oscillator radial norm, and coefficient checks of the
//! closed-form generating functions.
//!
//! Polynomials are evaluated by exact recurrences; the generating functions
//! are *not* used for evaluation, so the [`gf_check`] comparisons stay
//! independent.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::hypergeometric::hyp2f1_terminating;
use crate::numeric::{rat_int, BigRational, HalfInt, SqrtRational};
use crate::series::MultiSeries;
use crate::{Error, Result};

/// Euler angles `(psi, theta, phi)` with `0 <= theta <= pi` and the other
/// two in `[0, 2 pi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerAngles {
    pub psi: f64,
    pub theta: f64,
    pub phi: f64,
}

impl EulerAngles {
    pub fn new(psi: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..=2.0 * PI).contains(&psi) || !(0.0..=2.0 * PI).contains(&phi)
        {
            return Err(Error::Domain(format!(
                "Euler angles out of range: psi={psi}, theta={theta}, phi={phi}"
            )));
        }
        Ok(EulerAngles { psi, theta, phi })
    }
}

// ---------------------------------------------------------------------------
// Orthogonal polynomials (exact recurrences)
// ---------------------------------------------------------------------------

/// Hermite polynomial `H_n(q)` by the three-term recurrence
/// `H_{n+1} = 2 q H_n - 2 n H_{n-1}`.
pub fn hermite(n: u32, q: &BigRational) -> BigRational {
    let mut prev = BigRational::one();
    if n == 0 {
        return prev;
    }
    let two_q = rat_int(2) * q;
    let mut cur = two_q.clone();
    for k in 1..n {
        let next = &two_q * &cur - rat_int(2 * k as i64) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Legendre polynomial `P_l(x)` by the Bonnet recurrence.
pub fn legendre(l: u32, x: &BigRational) -> BigRational {
    let mut prev = BigRational::one();
    if l == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for k in 1..l {
        let k = k as i64;
        let next = (rat_int(2 * k + 1) * x * &cur - rat_int(k) * &prev) / rat_int(k + 1);
        prev = cur;
        cur = next;
    }
    cur
}

/// Floating-point Legendre value and derivative, used by the Gauss-Legendre
/// node solver and the addition-formula checks.
pub fn legendre_f64(l: u32, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    if l == 0 {
        return (1.0, 0.0);
    }
    let mut cur = x;
    for k in 1..l {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    let l = l as f64;
    let deriv = l * (x * cur - prev) / (x * x - 1.0);
    (cur, deriv)
}

/// Gegenbauer polynomial `C_l^(m)(x)`: the degree-`l` coefficient of the
/// closed form `(1 - 2 a x + a^2)^(-m)`, extracted exactly by the series
/// engine.
pub fn gegenbauer(l: u32, m: u32, x: &BigRational) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::Domain("gegenbauer requires m >= 1".into()));
    }
    let vars = ["a"];
    let a = MultiSeries::var(&vars, l, "a")?;
    // f = 2 x a - a^2, so (1 - f)^(-m) is the generating function
    let f = a.scale(&(rat_int(2) * x)).sub(&a.pow(2)?)?;
    let g = f.geom(m)?;
    g.coefficient(&[l])
}

/// Classical Gegenbauer recurrence, kept separate so the generating-function
/// extraction above has an independent check.
pub fn gegenbauer_recurrence(l: u32, m: u32, x: &BigRational) -> BigRational {
    let mut prev = BigRational::one();
    if l == 0 {
        return prev;
    }
    let mut cur = rat_int(2 * m as i64) * x;
    for k in 1..l {
        let k = k as i64;
        let m = m as i64;
        let next = (rat_int(2 * (k + m)) * x * &cur - rat_int(k + 2 * m - 1) * &prev)
            / rat_int(k + 1);
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial `P_n^(alpha,beta)(x)` through its terminating
/// hypergeometric form
/// `C(n+alpha, n) 2F1(-n, n+alpha+beta+1; 1+alpha; (1-x)/2)`.
pub fn jacobi(n: u32, alpha: i64, beta: i64, x: &BigRational) -> Result<BigRational> {
    let n_i = n as i64;
    let pre = BigRational::from_integer(crate::numeric::binomial(n_i + alpha, n_i));
    let f = hyp2f1_terminating(
        &rat_int(-n_i),
        &rat_int(n_i + alpha + beta + 1),
        &rat_int(1 + alpha),
        &((rat_int(1) - x) / rat_int(2)),
    )?;
    Ok(pre * f)
}

/// The companion hypergeometric form of the Jacobi polynomial expanded
/// around the opposite endpoint:
/// `(-1)^n C(n+beta, n) 2F1(-n, n+alpha+beta+1; 1+beta; (1+x)/2)`.
/// Equality with [`jacobi`] is a verified identity, not an assumption.
pub fn jacobi_endpoint_form(n: u32, alpha: i64, beta: i64, x: &BigRational) -> Result<BigRational> {
    let n_i = n as i64;
    let pre = BigRational::from_integer(crate::numeric::binomial(n_i + beta, n_i));
    let f = hyp2f1_terminating(
        &rat_int(-n_i),
        &rat_int(n_i + alpha + beta + 1),
        &rat_int(1 + beta),
        &((rat_int(1) + x) / rat_int(2)),
    )?;
    let sign = if n % 2 == 0 { rat_int(1) } else { rat_int(-1) };
    Ok(sign * pre * f)
}

fn jacobi_f64(n: i64, alpha: i64, beta: i64, x: f64) -> f64 {
    // C(n+alpha, n) 2F1(-n, n+alpha+beta+1; 1+alpha; (1-x)/2), all in f64
    let pre = crate::numeric::binomial(n + alpha, n).to_f64().unwrap_or(f64::NAN);
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..n {
        term *= (-n + k) as f64 * (n + alpha + beta + 1 + k) as f64
            / ((1 + alpha + k) as f64 * (k + 1) as f64)
            * (0.5 * (1.0 - x));
        sum += term;
    }
    pre * sum
}

// ---------------------------------------------------------------------------
// Wigner little-d and spherical harmonics
// ---------------------------------------------------------------------------

/// Wigner little-d `d^j_{mp,m}(theta)` through the Jacobi-polynomial
/// realization, with symmetry mapping into the region where the Jacobi
/// indices are nonnegative. Conventions: `d(0)` is the identity, `d` is
/// real, `d^1_{0,0} = cos(theta)`.
pub fn wigner_little_d(j: HalfInt, mp: HalfInt, m: HalfInt, theta: f64) -> Result<f64> {
    if mp.abs() > j || m.abs() > j {
        return Err(Error::Domain(format!("projections out of range: d^{j}_({mp},{m})")));
    }
    if (j + m).is_half_odd() || (j + mp).is_half_odd() {
        return Err(Error::Domain(format!(
            "projection integrality violated: d^{j}_({mp},{m})"
        )));
    }
    let (mut mp, mut m) = (mp, m);
    let mut sign = 1i64;
    if (m + mp).is_negative() {
        // d_{mp,m} = d_{-m,-mp}
        let (a, b) = (-m, -mp);
        mp = a;
        m = b;
    }
    if (m - mp).is_negative() {
        // d_{mp,m} = (-1)^(m-mp) d_{m,mp}
        if (m - mp).as_integer().unwrap() % 2 != 0 {
            sign = -1;
        }
        std::mem::swap(&mut mp, &mut m);
    }
    let a = (m - mp).as_integer().unwrap();
    let b = (m + mp).as_integer().unwrap();
    let n = (j - m).as_integer().unwrap();
    let norm = BigRational::new(
        (j + m).factorial().unwrap() * (j - m).factorial().unwrap(),
        (j + mp).factorial().unwrap() * (j - mp).factorial().unwrap(),
    );
    let half = theta / 2.0;
    Ok(sign as f64
        * norm.to_f64().unwrap().sqrt()
        * half.cos().powi(b as i32)
        * half.sin().powi(a as i32)
        * jacobi_f64(n, a, b, theta.cos()))
}

/// Spherical harmonic `Y_lm(theta, phi)` with the Condon-Shortley phase,
/// obtained from the little-d relation
/// `Y_lm = sqrt((2l+1)/(4 pi)) d^l_{m,0}(theta) e^(i m phi)`.
pub fn spherical_harmonic(l: u32, m: i64, theta: f64, phi: f64) -> Result<Complex64> {
    if m.unsigned_abs() > l as u64 {
        return Err(Error::Domain(format!("Y_({l},{m}) projection out of range")));
    }
    let d = wigner_little_d(
        HalfInt::from_int(l as i64),
        HalfInt::from_int(m),
        HalfInt::ZERO,
        theta,
    )?;
    let norm = ((2 * l + 1) as f64 / (4.0 * PI)).sqrt();
    Ok(norm * d * Complex64::new(0.0, m as f64 * phi).exp())
}

/// An exact value times a symbolic power of `sqrt(pi)`, so radial norms stay
/// in the exact domain.
#[derive(Clone, Debug, PartialEq)]
pub struct PiTagged {
    pub value: SqrtRational,
    pub sqrt_pi_power: i32,
}

impl PiTagged {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64() * PI.sqrt().powi(self.sqrt_pi_power)
    }
}

/// Oscillator radial norm
/// `N_nl = (-1)^n sqrt(4 pi / ((2n + 2l + 1)!! (2n)!!))`, carried as an exact
/// square root times one power of `sqrt(pi)`.
pub fn radial_norm(n: u32, l: u32) -> PiTagged {
    let dd = crate::numeric::double_factorial((2 * n + 2 * l + 1) as i64).unwrap()
        * crate::numeric::double_factorial(2 * n as i64).unwrap();
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let value = SqrtRational::new(
        rat_int(2 * sign),
        BigRational::new(num_bigint::BigInt::from(1), dd),
    )
    .unwrap();
    PiTagged { value, sqrt_pi_power: 1 }
}

// ---------------------------------------------------------------------------
// Generating-function coefficient checks
// ---------------------------------------------------------------------------

/// Which closed-form generating function to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfKind {
    /// Oscillator basis generating function vs the wavefunction recurrence.
    Hermite,
    /// `1/sqrt(1 - 2 r x + r^2)` vs Legendre, checked exactly on the square.
    Legendre,
    /// Character generating function vs the direct `sum_m d^j_mm` trace.
    Character,
    /// `(1 - 2 a x + a^2)^(-m)` vs the classical Gegenbauer recurrence.
    Gegenbauer,
    /// Spherical-harmonic generating function vs `Y_lm`.
    Spherical,
}

/// Result of one generating-function check.
#[derive(Clone, Debug)]
pub struct GfReport {
    pub kind: GfKind,
    pub degree: u32,
    pub cases: usize,
    pub max_abs_dev: f64,
    pub pass: bool,
}

/// Spec'd tolerance for each floating check; the exact checks use zero.
pub fn gf_tolerance(kind: GfKind) -> f64 {
    match kind {
        GfKind::Hermite => 1e-12,
        GfKind::Character => 1e-10,
        GfKind::Spherical => 1e-10,
        GfKind::Legendre | GfKind::Gegenbauer => 0.0,
    }
}

/// Expands a closed-form generating function and compares its coefficients
/// against the independently computed family.
///
/// Samples are rational: abscissas for Hermite (`q`), Legendre and
/// Gegenbauer (`x`), and fractions of `pi` for the angle in the Character
/// and Spherical checks.
pub fn gf_check(kind: GfKind, degree: u32, samples: &[BigRational]) -> Result<GfReport> {
    if degree > 64 {
        return Err(Error::DegreeBudget(format!("gf_check degree {degree}")));
    }
    let mut max_dev: f64 = 0.0;
    let mut cases = 0usize;
    let mut exact_ok = true;
    match kind {
        GfKind::Legendre => {
            // (sum_l P_l r^l)^2 = 1/(1 - 2 r x + r^2): compare the square's
            // coefficients, which stay rational
            for x in samples {
                let vars = ["r"];
                let r = MultiSeries::var(&vars, degree, "r")?;
                let f = r.scale(&(rat_int(2) * x)).sub(&r.pow(2)?)?;
                let g = f.geom(1)?;
                for l in 0..=degree {
                    let mut convolution = BigRational::zero();
                    for a in 0..=l {
                        convolution += legendre(a, x) * legendre(l - a, x);
                    }
                    cases += 1;
                    if convolution != g.coefficient(&[l])? {
                        exact_ok = false;
                        max_dev = f64::INFINITY;
                    }
                }
            }
        }
        GfKind::Gegenbauer => {
            for x in samples {
                for m in 1..=3u32 {
                    for l in 0..=degree {
                        cases += 1;
                        if gegenbauer(l, m, x)? != gegenbauer_recurrence(l, m, x) {
                            exact_ok = false;
                            max_dev = f64::INFINITY;
                        }
                    }
                }
            }
        }
        GfKind::Hermite => {
            for q in samples {
                let qf = q.to_f64().unwrap();
                let gaussian = PI.powf(-0.25) * (-qf * qf / 2.0).exp();
                for n in 0..=degree {
                    // z^n coefficient of exp(-z^2/2 + sqrt(2) q z)
                    let mut coeff = 0.0;
                    for k in 0..=(n / 2) {
                        let rest = (n - 2 * k) as i32;
                        coeff += (-0.5f64).powi(k as i32)
                            * (2.0f64.sqrt() * qf).powi(rest)
                            / (fact_f64(k) * fact_f64(n - 2 * k));
                    }
                    let lhs = gaussian * coeff;
                    let rhs = crate::kernels::oscillator_wavefn(n, qf) / fact_f64(n).sqrt();
                    cases += 1;
                    max_dev = max_dev.max((lhs - rhs).abs());
                }
            }
        }
        GfKind::Character => {
            // coefficient of r^(2j) in 1/(1 - 2 r cos(theta/2) cos(omega/2) + r^2)
            // is the Chebyshev value U_(2j)(c); compare with the direct trace
            // sum_m d^j_mm(theta) e^(-i m omega)
            for s in samples {
                let theta = s.to_f64().unwrap() * PI;
                for omega in [0.0, theta / 3.0 + 0.2] {
                    let c = (theta / 2.0).cos() * (omega / 2.0).cos();
                    let mut u_prev = 1.0; // U_0
                    let mut u_cur = 2.0 * c; // U_1
                    for k in 0..=degree {
                        let u_k = match k {
                            0 => 1.0,
                            1 => u_cur,
                            _ => {
                                let next = 2.0 * c * u_cur - u_prev;
                                u_prev = u_cur;
                                u_cur = next;
                                next
                            }
                        };
                        let j = HalfInt::from_twice(k as i64);
                        let mut chi = 0.0;
                        let mut tm = -j.twice();
                        while tm <= j.twice() {
                            let m = HalfInt::from_twice(tm);
                            chi += wigner_little_d(j, m, m, theta)? * (m.to_f64() * omega).cos();
                            tm += 2;
                        }
                        cases += 1;
                        max_dev = max_dev.max((chi - u_k).abs());
                    }
                }
            }
        }
        GfKind::Spherical => {
            for s in samples {
                let theta = s.to_f64().unwrap() * PI;
                for phi in [0.0, 0.9] {
                    let a = Complex64::new(0.0, phi).exp() * (-theta.sin() / 2.0);
                    let b = Complex64::new(0.0, -phi).exp() * (theta.sin() / 2.0);
                    let c = Complex64::new(theta.cos(), 0.0);
                    for l in 0..=degree {
                        for m in -(l as i64)..=(l as i64) {
                            // coefficient of xi^(l+m) eta^(l-m) in
                            // (A xi^2 + B eta^2 + C xi eta)^l / l!
                            let mut lhs = Complex64::new(0.0, 0.0);
                            let mut cc = (l as i64 - m.abs()) % 2;
                            while cc <= l as i64 - m.abs() {
                                let i = (l as i64 + m - cc) / 2;
                                let k = (l as i64 - m - cc) / 2;
                                lhs += a.powi(i as i32) * b.powi(k as i32) * c.powi(cc as i32)
                                    / (fact_f64(i as u32) * fact_f64(k as u32) * fact_f64(cc as u32));
                                cc += 2;
                            }
                            let norm = (4.0 * PI / (2 * l + 1) as f64).sqrt()
                                / (fact_f64((l as i64 + m) as u32)
                                    * fact_f64((l as i64 - m) as u32))
                                .sqrt();
                            let rhs = spherical_harmonic(l, m, theta, phi)? * norm;
                            cases += 1;
                            max_dev = max_dev.max((lhs - rhs).norm());
                        }
                    }
                }
            }
        }
    }
    let tol = gf_tolerance(kind);
    let pass = if tol == 0.0 { exact_ok } else { max_dev <= tol };
    Ok(GfReport { kind, degree, cases, max_abs_dev: max_dev, pass })
}

fn fact_f64(n: u32) -> f64 {
    crate::numeric::factorial_big(n as usize).to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeometric::{reverse_series, HypParams};
    use crate::numeric::rat;

    #[test]
    fn hermite_recurrence_values() {
        assert_eq!(hermite(0, &rat(7, 3)), rat_int(1));
        assert_eq!(hermite(1, &rat(3, 2)), rat_int(3));
        assert_eq!(hermite(3, &rat_int(1)), rat_int(-4));
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(0, &rat(2, 5)), rat_int(1));
        assert_eq!(legendre(1, &rat(2, 5)), rat(2, 5));
        assert_eq!(legendre(2, &rat(1, 2)), rat(-1, 8));
    }

    #[test]
    fn gegenbauer_extraction_examples() {
        assert_eq!(gegenbauer(0, 2, &rat(1, 3)).unwrap(), rat_int(1));
        assert_eq!(gegenbauer(1, 1, &rat(1, 3)).unwrap(), rat(2, 3));
        assert_eq!(gegenbauer(2, 1, &rat_int(0)).unwrap(), rat_int(-1));
        assert!(gegenbauer(2, 0, &rat_int(0)).is_err());
    }

    #[test]
    fn gegenbauer_extraction_matches_recurrence() {
        for m in 1..=3u32 {
            for l in 0..=8u32 {
                for x in [rat_int(0), rat(1, 2), rat(-1, 3), rat_int(1)] {
                    assert_eq!(
                        gegenbauer(l, m, &x).unwrap(),
                        gegenbauer_recurrence(l, m, &x),
                        "l={l} m={m} x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn jacobi_values() {
        assert_eq!(jacobi(0, 3, 1, &rat(1, 5)).unwrap(), rat_int(1));
        assert_eq!(jacobi(1, 0, 0, &rat(2, 7)).unwrap(), rat(2, 7));
        assert_eq!(jacobi(2, 1, 1, &rat_int(0)).unwrap(), rat(-3, 4));
    }

    #[test]
    fn jacobi_two_hypergeometric_forms_agree() {
        for n in 0..=8u32 {
            for alpha in 0..=4i64 {
                for beta in 0..=4i64 {
                    for x in [rat_int(0), rat(1, 2), rat(-1, 2), rat_int(1), rat_int(-1)] {
                        assert_eq!(
                            jacobi(n, alpha, beta, &x).unwrap(),
                            jacobi_endpoint_form(n, alpha, beta, &x).unwrap(),
                            "n={n} alpha={alpha} beta={beta} x={x}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_series_reversal_consistency() {
        // reversing the terminating 2F1 behind the Jacobi form reproduces it
        for n in 1..=6i64 {
            for (alpha, beta) in [(0i64, 0i64), (1, 2), (3, 1)] {
                for x in [rat(1, 2), rat(-1, 3)] {
                    let z = (rat_int(1) - &x) / rat_int(2);
                    let p = HypParams::new(
                        vec![rat_int(-n), rat_int(n + alpha + beta + 1)],
                        vec![rat_int(1 + alpha)],
                        z,
                    );
                    let direct = p.eval().unwrap();
                    let (pre, rev) = reverse_series(&p).unwrap();
                    assert_eq!(direct, pre * rev.eval().unwrap(), "n={n} a={alpha} b={beta}");
                }
            }
        }
    }

    #[test]
    fn little_d_identity_and_known_entries() {
        let h = HalfInt::from_twice;
        for tj in 0..=4i64 {
            for tmp in (-tj..=tj).step_by(2) {
                for tm in (-tj..=tj).step_by(2) {
                    let d = wigner_little_d(h(tj), h(tmp), h(tm), 0.0).unwrap();
                    let expect = if tmp == tm { 1.0 } else { 0.0 };
                    assert!((d - expect).abs() < 1e-14, "d^{tj}({tmp},{tm})(0) = {d}");
                }
            }
        }
        for theta in [0.3, 1.2, 2.8] {
            let d = wigner_little_d(h(1), h(1), h(1), theta).unwrap();
            assert!((d - (theta / 2.0).cos()).abs() < 1e-14);
            let d = wigner_little_d(h(2), h(0), h(0), theta).unwrap();
            assert!((d - theta.cos()).abs() < 1e-14);
            let d = wigner_little_d(h(1), h(1), h(-1), theta).unwrap();
            assert!((d - -(theta / 2.0).sin()).abs() < 1e-14);
        }
        assert!(wigner_little_d(h(1), h(3), h(1), 0.5).is_err());
    }

    #[test]
    fn little_d_unitarity() {
        let h = HalfInt::from_twice;
        for tj in 0..=6i64 {
            for theta in [0.3, 1.0, 2.5] {
                for tmp in (-tj..=tj).step_by(2) {
                    for tmpp in (-tj..=tj).step_by(2) {
                        let mut acc = 0.0;
                        for tm in (-tj..=tj).step_by(2) {
                            acc += wigner_little_d(h(tj), h(tmp), h(tm), theta).unwrap()
                                * wigner_little_d(h(tj), h(tmpp), h(tm), theta).unwrap();
                        }
                        let expect = if tmp == tmpp { 1.0 } else { 0.0 };
                        assert!(
                            (acc - expect).abs() < 1e-12,
                            "2j={tj} ({tmp},{tmpp}) theta={theta}: {acc}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn legendre_matches_little_d() {
        for l in 0..=6u32 {
            for theta in [0.2f64, 0.9, 1.7, 3.0] {
                let (p, _) = legendre_f64(l, theta.cos());
                let d = wigner_little_d(
                    HalfInt::from_int(l as i64),
                    HalfInt::ZERO,
                    HalfInt::ZERO,
                    theta,
                )
                .unwrap();
                assert!((p - d).abs() < 1e-12, "l={l} theta={theta}");
            }
        }
    }

    #[test]
    fn spherical_harmonic_values() {
        let y = spherical_harmonic(0, 0, 1.1, 2.2).unwrap();
        assert!((y - Complex64::new(1.0 / (4.0 * PI).sqrt(), 0.0)).norm() < 1e-14);
        let y = spherical_harmonic(1, 0, 0.7, 0.3).unwrap();
        assert!((y.re - (3.0 / (4.0 * PI)).sqrt() * 0.7f64.cos()).abs() < 1e-14);
        assert!(y.im.abs() < 1e-15);
        let y = spherical_harmonic(1, 1, PI / 2.0, 0.0).unwrap();
        assert!((y.re - -(3.0 / (8.0 * PI)).sqrt()).abs() < 1e-14, "{y}");
    }

    #[test]
    fn spherical_harmonic_addition_diagonal() {
        for l in 0..=4u32 {
            for (theta, phi) in [(0.4, 0.0), (1.3, 2.0), (2.7, 5.1)] {
                let mut acc = 0.0;
                for m in -(l as i64)..=(l as i64) {
                    acc += spherical_harmonic(l, m, theta, phi).unwrap().norm_sqr();
                }
                let expect = (2 * l + 1) as f64 / (4.0 * PI);
                assert!((acc - expect).abs() < 1e-12, "l={l}");
            }
        }
    }

    #[test]
    fn radial_norm_values() {
        let n00 = radial_norm(0, 0);
        assert_eq!(n00.value, SqrtRational::from_integer(2));
        assert_eq!(n00.sqrt_pi_power, 1);
        assert!((n00.to_f64() - 2.0 * PI.sqrt()).abs() < 1e-14);
        let n10 = radial_norm(1, 0);
        assert!((n10.to_f64() - -(2.0 * PI / 3.0).sqrt()).abs() < 1e-14);
        let n01 = radial_norm(0, 1);
        assert!((n01.to_f64() - (4.0 * PI / 3.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn radial_norm_square_identity() {
        for n in 0..=5u32 {
            for l in 0..=5u32 {
                let nn = radial_norm(n, l);
                let dd = crate::numeric::double_factorial((2 * n + 2 * l + 1) as i64).unwrap()
                    * crate::numeric::double_factorial(2 * n as i64).unwrap();
                let lhs = nn.value.square() * BigRational::from_integer(dd);
                assert_eq!(lhs, rat_int(4), "n={n} l={l}");
                assert_eq!(nn.sqrt_pi_power, 1);
            }
        }
    }

    #[test]
    fn gf_checks_pass() {
        let r = gf_check(GfKind::Legendre, 12, &[rat(1, 3)]).unwrap();
        assert!(r.pass, "legendre: {r:?}");
        let r = gf_check(GfKind::Hermite, 10, &[rat(7, 10), rat(-1, 2), rat_int(2)]).unwrap();
        assert!(r.pass, "hermite: {r:?}");
        let r = gf_check(GfKind::Character, 8, &[rat(1, 2), rat(1, 3)]).unwrap();
        assert!(r.pass, "character: {r:?}");
        let r = gf_check(GfKind::Gegenbauer, 8, &[rat(1, 3), rat(-2, 5)]).unwrap();
        assert!(r.pass, "gegenbauer: {r:?}");
        let r = gf_check(GfKind::Spherical, 5, &[rat(1, 2), rat(1, 5)]).unwrap();
        assert!(r.pass, "spherical: {r:?}");
        assert!(gf_check(GfKind::Legendre, 100, &[rat(1, 3)]).is_err());
    }
}

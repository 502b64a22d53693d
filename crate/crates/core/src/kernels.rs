//! Numerical verification of the oscillator kernel identities: the truncated
//! delta kernel and the Feynman propagator (closed Gaussian form vs the
//! spectral sum).
//!
//! Internally everything runs in scaled units (`hbar = m = omega = 1`, with
//! `q = sqrt(m omega / hbar) x`); [`KernelParams`] rescales at the boundary.
//! The spectral sum converges only distributionally at real phase, so the
//! comparison against the closed form damps the phase (`alpha -> alpha - i
//! eps`) and extrapolates `eps -> 0` by polynomial extrapolation over
//! `eps in {1e-2, 3e-3, 1e-3}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Oscillator parameters plus the evolution phase `alpha = omega (t - t0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelParams {
    pub mass: f64,
    pub omega: f64,
    pub hbar: f64,
    pub alpha: f64,
}

impl KernelParams {
    pub fn new(mass: f64, omega: f64, hbar: f64, alpha: f64) -> Result<Self> {
        if mass <= 0.0 || omega <= 0.0 || hbar <= 0.0 {
            return Err(Error::Domain(format!(
                "mass, omega, hbar must be positive: {mass}, {omega}, {hbar}"
            )));
        }
        Ok(KernelParams { mass, omega, hbar, alpha })
    }

    /// Scaled units with the given phase.
    pub fn scaled(alpha: f64) -> Self {
        KernelParams { mass: 1.0, omega: 1.0, hbar: 1.0, alpha }
    }

    /// `q = q_scale * x`.
    pub fn q_scale(&self) -> f64 {
        (self.mass * self.omega / self.hbar).sqrt()
    }
}

/// Normalized oscillator eigenfunction `u_n(q)` in scaled coordinates, via
/// the numerically stable recurrence on the normalized functions.
pub fn oscillator_wavefn(n: u32, q: f64) -> f64 {
    let mut prev = PI.powf(-0.25) * (-q * q / 2.0).exp();
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0f64.sqrt() * q * prev;
    for k in 1..n {
        let k = k as f64;
        let next = (2.0 / (k + 1.0)).sqrt() * q * cur - (k / (k + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Truncated delta kernel `K_N(q, q') = sum_{n < N} u_n(q') u_n(q)`.
pub fn delta_kernel(n_terms: u32, q: f64, qp: f64) -> f64 {
    assert!(n_terms >= 1, "delta kernel needs at least one term");
    let mut acc = 0.0;
    let (mut a_prev, mut b_prev) = (oscillator_wavefn(0, q), oscillator_wavefn(0, qp));
    acc += a_prev * b_prev;
    if n_terms == 1 {
        return acc;
    }
    let (mut a_cur, mut b_cur) = (2.0f64.sqrt() * q * a_prev, 2.0f64.sqrt() * qp * b_prev);
    acc += a_cur * b_cur;
    for k in 1..(n_terms - 1) {
        let kf = k as f64;
        let c1 = (2.0 / (kf + 1.0)).sqrt();
        let c2 = (kf / (kf + 1.0)).sqrt();
        let a_next = c1 * q * a_cur - c2 * a_prev;
        let b_next = c1 * qp * b_cur - c2 * b_prev;
        acc += a_next * b_next;
        a_prev = a_cur;
        a_cur = a_next;
        b_prev = b_cur;
        b_cur = b_next;
    }
    acc
}

/// Smears the truncated delta kernel against a test function:
/// `integral K_N(x, q') f(q') dq'`, by per-mode Gauss-Legendre coefficients
/// (shared across truncations, so nested sums stay nested).
pub fn delta_kernel_smeared<F: Fn(f64) -> f64>(n_terms: u32, x: f64, f: F) -> f64 {
    let rule = crate::quadrature::gauss_legendre(48).expect("static order");
    let (lo, hi, panels) = (-9.0, 9.0, 24);
    // coefficients c_n = <u_n, f> via one recurrence pass per node
    let mut coeffs = vec![0.0f64; n_terms as usize];
    let step = (hi - lo) / panels as f64;
    for p in 0..panels {
        let a = lo + p as f64 * step;
        let mid = a + step / 2.0;
        let half = step / 2.0;
        for (node, w) in rule.nodes.iter().zip(&rule.weights) {
            let q = mid + half * node;
            let fw = f(q) * w * half;
            let mut prev = oscillator_wavefn(0, q);
            coeffs[0] += prev * fw;
            if n_terms > 1 {
                let mut cur = 2.0f64.sqrt() * q * prev;
                coeffs[1] += cur * fw;
                for k in 1..(n_terms - 1) {
                    let kf = k as f64;
                    let next =
                        (2.0 / (kf + 1.0)).sqrt() * q * cur - (kf / (kf + 1.0)).sqrt() * prev;
                    coeffs[(k + 1) as usize] += next * fw;
                    prev = cur;
                    cur = next;
                }
            }
        }
    }
    let mut acc = 0.0;
    let mut prev = oscillator_wavefn(0, x);
    acc += prev * coeffs[0];
    if n_terms > 1 {
        let mut cur = 2.0f64.sqrt() * x * prev;
        acc += cur * coeffs[1];
        for k in 1..(n_terms - 1) {
            let kf = k as f64;
            let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
            acc += next * coeffs[(k + 1) as usize];
            prev = cur;
            cur = next;
        }
    }
    acc
}

/// Closed propagator at a complex phase; the square-root branch is the
/// principal branch of `1/sqrt(i sin alpha)`, continuous from `alpha -> 0+`.
fn closed_complex(p: &KernelParams, alpha: Complex64, x: f64, xp: f64) -> Complex64 {
    let s = p.q_scale();
    let (q, qp) = (s * x, s * xp);
    let sin = alpha.sin();
    let i = Complex64::new(0.0, 1.0);
    let root = (p.mass * p.omega / (2.0 * PI * p.hbar)).sqrt() / (i * sin).sqrt();
    let exponent = i / (2.0 * sin) * ((q * q + qp * qp) * alpha.cos() - 2.0 * q * qp);
    root * exponent.exp()
}

/// Feynman propagator closed form
/// `sqrt(m omega/(2 pi i hbar sin a)) exp[(i/(2 sin a))((q^2+q'^2) cos a - 2 q q')]`.
/// Fails on the caustic `|sin alpha| <= 1e-9`.
pub fn propagator_closed(p: &KernelParams, x: f64, xp: f64) -> Result<Complex64> {
    if p.alpha.sin().abs() <= 1e-9 {
        return Err(Error::Caustic(p.alpha));
    }
    Ok(closed_complex(p, Complex64::new(p.alpha, 0.0), x, xp))
}

fn spectral_complex(p: &KernelParams, n_terms: u32, alpha: Complex64, x: f64, xp: f64) -> Complex64 {
    let s = p.q_scale();
    let (q, qp) = (s * x, s * xp);
    let i = Complex64::new(0.0, 1.0);
    let w = (-i * alpha).exp();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut wn = Complex64::new(1.0, 0.0);
    let (mut a_prev, mut b_prev) = (oscillator_wavefn(0, q), oscillator_wavefn(0, qp));
    acc += a_prev * b_prev * wn;
    if n_terms > 1 {
        let (mut a_cur, mut b_cur) = (2.0f64.sqrt() * q * a_prev, 2.0f64.sqrt() * qp * b_prev);
        wn *= w;
        acc += a_cur * b_cur * wn;
        for k in 1..(n_terms - 1) {
            let kf = k as f64;
            let c1 = (2.0 / (kf + 1.0)).sqrt();
            let c2 = (kf / (kf + 1.0)).sqrt();
            let a_next = c1 * q * a_cur - c2 * a_prev;
            let b_next = c1 * qp * b_cur - c2 * b_prev;
            wn *= w;
            acc += a_next * b_next * wn;
            a_prev = a_cur;
            a_cur = a_next;
            b_prev = b_cur;
            b_cur = b_next;
        }
    }
    (-i * alpha / 2.0).exp() * acc * s
}

/// Truncated spectral sum
/// `e^(-i alpha/2) sum_{n<N} u_n(x) u_n(x') e^(-i n alpha)`, in the same
/// units as [`propagator_closed`] (the measure factor `sqrt(m omega/hbar)`
/// is included).
pub fn propagator_spectral(p: &KernelParams, n_terms: u32, x: f64, xp: f64) -> Complex64 {
    spectral_complex(p, n_terms, Complex64::new(p.alpha, 0.0), x, xp)
}

/// Polynomial extrapolation to zero through `(xs, ys)` (Neville's scheme).
fn neville_to_zero(xs: &[f64], ys: &[Complex64]) -> Complex64 {
    let mut tab: Vec<Complex64> = ys.to_vec();
    let n = tab.len();
    for level in 1..n {
        for i in 0..(n - level) {
            let x0 = xs[i];
            let x1 = xs[i + level];
            tab[i] = (tab[i + 1] * x0 - tab[i] * x1) / (x0 - x1);
        }
    }
    tab[0]
}

/// The Abel-regularized spectral propagator: evaluates the damped sum at
/// `eps in {1e-2, 3e-3, 1e-3}` with the truncation set deep enough that the
/// leftover tail is negligible (`N = ceil(40/eps)`), then extrapolates
/// `eps -> 0`.
pub fn propagator_spectral_regularized(p: &KernelParams, x: f64, xp: f64) -> Complex64 {
    let eps_list = [1e-2f64, 3e-3, 1e-3];
    let ys: Vec<Complex64> = eps_list
        .iter()
        .map(|&eps| {
            let n = (40.0 / eps).ceil() as u32;
            spectral_complex(p, n, Complex64::new(p.alpha, -eps), x, xp)
        })
        .collect();
    neville_to_zero(&eps_list, &ys)
}

/// Checks the propagator semigroup property
/// `integral K_(a2)(x, y) K_(a1)(y, x') dy = K_(a1+a2)(x, x')`, returning the
/// residual. The integral is damped by an analytic Gaussian
/// `exp(-delta (y-y0)^2)` centered on the stationary point of the phase and
/// extrapolated `delta -> 0`; `quad_nodes` is the Gauss-Legendre order used
/// per unit-length panel.
pub fn propagator_composition_check(
    p: &KernelParams,
    alpha1: f64,
    alpha2: f64,
    x: f64,
    xp: f64,
    quad_nodes: usize,
) -> Result<f64> {
    for a in [alpha1, alpha2, alpha1 + alpha2] {
        if a.sin().abs() <= 1e-9 {
            return Err(Error::Caustic(a));
        }
    }
    let s = p.q_scale();
    let s2 = s * s;
    // stationary point of the joint phase: y0 = (x/sin a2 + x'/sin a1) / (cot a1 + cot a2)
    let cot = |a: f64| a.cos() / a.sin();
    let a_coef = 0.5 * s2 * (cot(alpha1) + cot(alpha2));
    let b_coef = -s2 * (x / alpha2.sin() + xp / alpha1.sin());
    let y0 = -b_coef / (2.0 * a_coef);
    let p1 = KernelParams { alpha: alpha1, ..*p };
    let p2 = KernelParams { alpha: alpha2, ..*p };
    let order = quad_nodes.clamp(16, 64);
    let rule = crate::quadrature::gauss_legendre(order)?;

    let deltas = [8e-3f64, 4e-3, 2e-3];
    let mut values = Vec::with_capacity(deltas.len());
    for &delta in &deltas {
        let span = (37.0 / delta).sqrt() / s;
        let (lo, hi) = (y0 - span, y0 + span);
        // resolve the fastest local oscillation 2|a| span + |b|
        let freq = 2.0 * a_coef.abs() * span * s.max(1.0) + b_coef.abs();
        let panel_w = (0.6 * order as f64 / freq.max(1.0)).min(1.0).max(0.01);
        let panels = ((hi - lo) / panel_w).ceil() as usize;
        let val = rule.integrate_complex_panels(lo, hi, panels, |y| {
            let damp = (-delta * (s * (y - y0)).powi(2)).exp();
            closed_complex(&p2, Complex64::new(alpha2, 0.0), x, y)
                * closed_complex(&p1, Complex64::new(alpha1, 0.0), y, xp)
                * damp
        });
        values.push(val);
    }
    let extrapolated = neville_to_zero(&deltas, &values);
    let target = closed_complex(p, Complex64::new(alpha1 + alpha2, 0.0), x, xp);
    Ok((extrapolated - target).norm())
}

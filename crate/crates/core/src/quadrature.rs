//! Gauss-Legendre quadrature and the integral representations of the 3j and
//! 6j symbols and the Gaunt integrals, each cross-checked against the exact
//! module.
//!
//! Every representation here is assembled from the stretched little-d route:
//! the group integral of three D-matrices with one stretched projection row
//! collapses to a theta integral of trigonometric powers times a Jacobi-form
//! little-d (times a terminating 2F1 for the 6j case), divided by the
//! stretched 3j. No per-case constants: a single formula covers each sweep.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use crate::hypergeometric::hyp2f1_terminating_f64;
use crate::numeric::HalfInt;
use crate::special::{legendre_f64, spherical_harmonic, wigner_little_d};
use crate::su2::{three_j_special, triangle_ok, SixJArgs, ThreeJArgs};
use crate::{Error, Result};

/// Nodes and weights of an n-point Gauss-Legendre rule on `(-1, 1)`.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

static RULE_CACHE: RwLock<Option<HashMap<usize, Arc<QuadratureRule>>>> = RwLock::new(None);

/// Gauss-Legendre rule of the given order (`2..=512`), from Newton iteration
/// on the Legendre polynomial; each node converges to 1e-15. Rules are
/// cached and shared.
pub fn gauss_legendre(order: usize) -> Result<Arc<QuadratureRule>> {
    if !(2..=512).contains(&order) {
        return Err(Error::Domain(format!("quadrature order {order} out of range 2..=512")));
    }
    {
        let guard = RULE_CACHE.read().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(rule) = map.get(&order) {
                return Ok(rule.clone());
            }
        }
    }
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        // Tricomi-style initial guess for the k-th root
        let mut x = (PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_f64(n as u32, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_f64(n as u32, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x.abs();
        nodes[n - 1 - k] = x.abs();
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, dp) = legendre_f64(n as u32, 0.0);
        weights[n / 2] = 2.0 / (dp * dp);
    }
    let rule = Arc::new(QuadratureRule { nodes, weights, order });
    let mut guard = RULE_CACHE.write().unwrap();
    let map = guard.get_or_insert_with(HashMap::new);
    Ok(map.entry(order).or_insert(rule).clone())
}

impl QuadratureRule {
    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Integrates a complex-valued `f` over `[a, b]` split into `panels`
    /// equal panels.
    pub fn integrate_complex_panels<F: FnMut(f64) -> Complex64>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: F,
    ) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let step = (b - a) / panels as f64;
        for p in 0..panels {
            let lo = a + p as f64 * step;
            let hi = lo + step;
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (lo + hi);
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                acc += w * f(mid + half * x) * half;
            }
        }
        acc
    }

    /// Real-valued panel integration.
    pub fn integrate_panels<F: FnMut(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: F,
    ) -> f64 {
        let mut acc = 0.0;
        let step = (b - a) / panels as f64;
        for p in 0..panels {
            let lo = a + p as f64 * step;
            let hi = lo + step;
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (lo + hi);
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                acc += w * f(mid + half * x) * half;
            }
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Integral representation of the 3j symbol
// ---------------------------------------------------------------------------

/// 3j symbol by its theta-integral representation: the product of three
/// little-d functions with the stretched row `(j1, -j2, j2-j1)`, integrated
/// against `sin(theta)/2` and divided by the stretched 3j. The first two
/// d-functions are the closed monomials
/// `d^j_{j,m} = (-1)^(j-m) sqrt(C(2j, j-m)) cos^(j+m) sin^(j-m)` and
/// `d^j_{-j,m} = sqrt(C(2j, j-m)) cos^(j-m) sin^(j+m)` in the half angle.
pub fn three_j_ir(args: &ThreeJArgs, order: usize) -> Result<f64> {
    if !args.is_nonzero_candidate() {
        return Err(Error::Domain(format!("invalid 3j arguments {args:?}")));
    }
    let rule = gauss_legendre(order)?;
    let ThreeJArgs { j1, j2, j3, m1, m2, m3 } = *args;
    let divisor = three_j_special(j1, j2, j3)?.to_f64();
    let c1 = binom_ratio(j1, m1); // (2j1)! / ((j1+m1)!(j1-m1)!)
    let c2 = binom_ratio(j2, m2);
    let e1 = (j1 + m1).as_integer().unwrap() as i32; // cos power from d1
    let e2 = (j1 - m1).as_integer().unwrap() as i32; // sin power from d1
    let e3 = (j2 - m2).as_integer().unwrap() as i32; // cos power from d2
    let e4 = (j2 + m2).as_integer().unwrap() as i32; // sin power from d2
    let sign = if e2 % 2 == 0 { 1.0 } else { -1.0 };
    let integral = rule.integrate(0.0, PI, |theta| {
        let (s, c) = ((theta / 2.0).sin(), (theta / 2.0).cos());
        let d3 = wigner_little_d(j3, j2 - j1, m3, theta).expect("valid projections");
        c.powi(e1 + e3) * s.powi(e2 + e4) * d3 * theta.sin()
    });
    Ok(0.5 * sign * (c1 * c2).sqrt() * integral / divisor)
}

fn binom_ratio(j: HalfInt, m: HalfInt) -> f64 {
    use num_traits::ToPrimitive;
    let num = (j + j).factorial().unwrap();
    let den = (j + m).factorial().unwrap() * (j - m).factorial().unwrap();
    crate::numeric::BigRational::new(num, den).to_f64().unwrap()
}

// ---------------------------------------------------------------------------
// Integral representation of the 6j symbol
// ---------------------------------------------------------------------------

/// 6j symbol by its theta-integral representation: trigonometric powers
/// times `d^j3_(j2-j1, l2-l1)` times a terminating `2F1(...; -tan^2(theta/2))`
/// evaluated exactly per node, with the square-root prefactor assembled from
/// the two stretched triads, divided by the stretched 3j symbols of the
/// `(j1 j2 j3)` and `(l1 l2 j3)` triads.
pub fn six_j_ir(args: &SixJArgs, order: usize) -> Result<f64> {
    for t in args.triads() {
        if !triangle_ok(t[0], t[1], t[2]) || t[0].is_negative() {
            return Err(Error::Domain(format!("triad failure in {args:?}")));
        }
    }
    let SixJArgs { j1, j2, j3, l1, l2, l3 } = *args;
    let rule = gauss_legendre(order)?;

    use num_traits::ToPrimitive;

    // triad factorial content of (j1 l2 l3) and (j2 l1 l3)
    let a1 = (l2 + l3 - j1).as_integer().unwrap();
    let a2 = (j1 - l2 + l3).as_integer().unwrap();
    let a3 = (j1 + l2 - l3).as_integer().unwrap();
    let b1 = (l1 + l3 - j2).as_integer().unwrap();
    let b2 = (j2 - l1 + l3).as_integer().unwrap();
    let b3 = (j2 + l1 - l3).as_integer().unwrap();
    let lex1 = (j1 + l2 + l3).as_integer().unwrap();
    let lex2 = (j2 + l1 + l3).as_integer().unwrap();

    let fact = |n: i64| crate::numeric::factorial_big(n as usize);
    let ratio1 = crate::numeric::BigRational::new(
        (j1 + j1).factorial().unwrap(),
        fact(lex1 + 1) * fact(a1) * fact(a2) * fact(a3),
    );
    let ratio2 = crate::numeric::BigRational::new(
        (j2 + j2).factorial().unwrap(),
        fact(lex2 + 1) * fact(b1) * fact(b2) * fact(b3),
    );
    let ratio3 = crate::numeric::BigRational::from_integer(
        (l1 + l1).factorial().unwrap() * (l2 + l2).factorial().unwrap(),
    );
    let sqrt_part =
        (ratio1.to_f64().unwrap() * ratio2.to_f64().unwrap() * ratio3.to_f64().unwrap()).sqrt();
    // the binomials of the two stretched 3j factors and the resummation
    // denominators cancel, leaving (2 l3)! as the only outer factor
    let resum_factor = (l3 + l3).factorial().unwrap().to_f64().unwrap();

    let hyp_a = -b1; // j2 - l1 - l3
    let hyp_b = -a1; // j1 - l2 - l3
    let hyp_c = -(l3 + l3).as_integer().unwrap();

    // (cos sin)^(l1+l2) tan^(j1+j2-2l3) split into the separately integral
    // cosine and sine powers (the exponents above are only jointly integral
    // for half-integer j3)
    let cos_pow = (l1 + l2 - j1 - j2 + l3 + l3).as_integer().unwrap() as i32;
    let sin_pow = (l1 + l2 + j1 + j2 - l3 - l3).as_integer().unwrap() as i32;
    let dj_mp = j2 - j1;
    let dj_m = l2 - l1;

    let integral = rule.integrate(0.0, PI, |theta| {
        let half = theta / 2.0;
        let (s, c) = (half.sin(), half.cos());
        if s == 0.0 || c == 0.0 {
            return 0.0;
        }
        let t = s / c;
        let f = hyp2f1_terminating_f64(hyp_a, hyp_b, hyp_c, -t * t).expect("terminating");
        let d = wigner_little_d(j3, dj_mp, dj_m, theta).expect("valid projections");
        c.powi(cos_pow) * s.powi(sin_pow) * d * f * theta.sin()
    });

    let phase_exp = (j1 + l2 + l3).as_integer().unwrap();
    let phase = if phase_exp % 2 == 0 { 1.0 } else { -1.0 };
    let divisor = three_j_special(j1, j2, j3)?.to_f64() * three_j_special(l1, l2, j3)?.to_f64();
    Ok(0.5 * phase * sqrt_part * resum_factor * integral / divisor)
}

// ---------------------------------------------------------------------------
// Gaunt integrals
// ---------------------------------------------------------------------------

/// Group integral of a triple product of D-matrices with the normalized Haar
/// measure `(1/(8 pi^2)) sin(theta) dtheta dphi dpsi`:
/// theta by Gauss-Legendre, phi and psi by the uniform trapezoid rule (exact
/// for trigonometric polynomials up to the point count). The contract is
/// `3j(m-row) * 3j(mp-row)`.
pub fn gaunt_triple_d(
    j: [HalfInt; 3],
    m: [HalfInt; 3],
    mp: [HalfInt; 3],
    theta_order: usize,
    phi_points: usize,
) -> Result<f64> {
    let total = j[0] + j[1] + j[2];
    let needed = (total.twice() + 1).max(1) as usize;
    if phi_points < needed {
        return Err(Error::Resolution(format!(
            "phi_points {phi_points} < 2J+1 = {needed}"
        )));
    }
    for i in 0..3 {
        if j[i].is_negative() || m[i].abs() > j[i] || mp[i].abs() > j[i] {
            return Err(Error::Domain("invalid D-matrix labels".into()));
        }
    }
    if (m[0] + m[1] + m[2]).twice() != 0 || (mp[0] + mp[1] + mp[2]).twice() != 0 {
        // a nonzero phi or psi frequency integrates to zero
        return Ok(0.0);
    }
    let rule = gauss_legendre(theta_order)?;
    let p = phi_points;
    // the theta factor is common to every (psi, phi) node
    let theta_part = rule.integrate(0.0, PI, |theta| {
        let mut prod = theta.sin();
        for i in 0..3 {
            prod *= wigner_little_d(j[i], m[i], mp[i], theta).expect("checked labels");
        }
        prod
    });
    let mut angular = Complex64::new(0.0, 0.0);
    for kpsi in 0..p {
        let psi = 2.0 * PI * kpsi as f64 / p as f64;
        for kphi in 0..p {
            let phi = 2.0 * PI * kphi as f64 / p as f64;
            angular += (0..3)
                .map(|i| {
                    Complex64::new(0.0, -(m[i].to_f64() * psi + mp[i].to_f64() * phi)).exp()
                })
                .product::<Complex64>();
        }
    }
    let weight = (2.0 * PI / p as f64).powi(2) / (8.0 * PI * PI);
    Ok((angular * theta_part * weight).re)
}

/// Integral of a triple product of (unconjugated) spherical harmonics over
/// the sphere; equals
/// `prod_i sqrt((2 l_i + 1)/(4 pi)) * 3j(l; 0 0 0) * 3j(l; m)`.
pub fn triple_y_integral(
    l: [u32; 3],
    m: [i64; 3],
    theta_order: usize,
    phi_points: usize,
) -> Result<f64> {
    for i in 0..3 {
        if m[i].unsigned_abs() > l[i] as u64 {
            return Err(Error::Domain("invalid Y_lm labels".into()));
        }
    }
    let lmax = *l.iter().max().unwrap() as usize;
    if phi_points < 2 * lmax + 1 {
        return Err(Error::Resolution(format!(
            "phi_points {phi_points} < 2 l_max + 1 = {}",
            2 * lmax + 1
        )));
    }
    if m.iter().sum::<i64>() != 0 {
        return Ok(0.0);
    }
    let rule = gauss_legendre(theta_order)?;
    let p = phi_points;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..p {
        let phi = 2.0 * PI * k as f64 / p as f64;
        let theta_part = rule.integrate(0.0, PI, |theta| {
            let mut prod = Complex64::new(theta.sin(), 0.0);
            for i in 0..3 {
                prod *= spherical_harmonic(l[i], m[i], theta, phi).expect("checked labels");
            }
            prod.re
        });
        acc += Complex64::new(theta_part, 0.0);
    }
    Ok(acc.re * 2.0 * PI / p as f64)
}

/// Convenience: the exact 3j as f64 for IR comparisons.
pub fn exact_three_j_f64(args: &ThreeJArgs) -> f64 {
    crate::su2::three_j(args, crate::su2::ThreeJMethod::Auto).to_f64()
}

/// Convenience: the exact 6j as f64 for IR comparisons.
pub fn exact_six_j_f64(args: &SixJArgs) -> f64 {
    crate::su2::six_j(args).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn rule_basics() {
        let r = gauss_legendre(2).unwrap();
        assert!((r.nodes[0] + (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((r.nodes[1] - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
        // sum of weights = 2
        for order in [2, 3, 5, 16, 64, 129] {
            let r = gauss_legendre(order).unwrap();
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "order {order}: {s}");
        }
        // x^4 exact at order >= 3
        let r = gauss_legendre(3).unwrap();
        let v = r.integrate(-1.0, 1.0, |x| x.powi(4));
        assert!((v - 0.4).abs() < 1e-15);
        assert!(gauss_legendre(1).is_err());
        assert!(gauss_legendre(513).is_err());
    }

    #[test]
    fn quadrature_exactness_sweep() {
        for n in 2..=20usize {
            let r = gauss_legendre(n).unwrap();
            for k in 0..=(2 * n - 1) as u32 {
                let v = r.integrate(-1.0, 1.0, |x| x.powi(k as i32));
                let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                assert!(
                    (v - exact).abs() < 1e-14,
                    "order {n} monomial {k}: {v} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn three_j_ir_examples() {
        let a = ThreeJArgs::new([h(1), h(1), h(2)], [h(1), h(1), h(-2)]);
        let v = three_j_ir(&a, 64).unwrap();
        assert!((v - (-(1.0f64 / 3.0).sqrt())).abs() < 1e-10, "{v}");
        let b = ThreeJArgs::new([h(2), h(2), h(0)], [h(0), h(0), h(0)]);
        let v = three_j_ir(&b, 64).unwrap();
        assert!((v - (-(1.0f64 / 3.0).sqrt())).abs() < 1e-10, "{v}");
        let c = ThreeJArgs::new([h(2), h(2), h(4)], [h(0), h(0), h(0)]);
        let v = three_j_ir(&c, 64).unwrap();
        assert!((v - (2.0f64 / 15.0).sqrt()).abs() < 1e-10, "{v}");
        assert!(three_j_ir(
            &ThreeJArgs::new([h(2), h(2), h(2)], [h(2), h(2), h(2)]),
            64
        )
        .is_err());
    }

    #[test]
    fn six_j_ir_examples() {
        let args = SixJArgs::new([h(2), h(2), h(2)], [h(0), h(2), h(2)]);
        let v = six_j_ir(&args, 96).unwrap();
        assert!((v - (-1.0 / 3.0)).abs() < 1e-8, "{v}");
        let args = SixJArgs::new([h(2), h(2), h(2)], [h(2), h(2), h(2)]);
        let v = six_j_ir(&args, 96).unwrap();
        let exact = exact_six_j_f64(&args);
        assert!((v - exact).abs() < 1e-8, "{v} vs {exact}");
        assert!(six_j_ir(&SixJArgs::new([h(4), h(0), h(2)], [h(0), h(2), h(2)]), 96).is_err());
    }

    #[test]
    fn gaunt_examples() {
        // j = (1/2, 1/2, 1): product of stretched and mixed 3j values
        let v = gaunt_triple_d(
            [h(1), h(1), h(2)],
            [h(1), h(1), h(-2)],
            [h(1), h(-1), h(0)],
            48,
            8,
        )
        .unwrap();
        let expect = (-(1.0f64 / 3.0).sqrt()) * (1.0f64 / 6.0).sqrt();
        assert!((v - expect).abs() < 1e-9, "{v} vs {expect}");
        // nonzero projection sum short-circuits
        let v = gaunt_triple_d(
            [h(1), h(1), h(2)],
            [h(1), h(1), h(0)],
            [h(1), h(-1), h(0)],
            48,
            8,
        )
        .unwrap();
        assert_eq!(v, 0.0);
        // trivial representation
        let v = gaunt_triple_d(
            [h(0), h(0), h(0)],
            [h(0), h(0), h(0)],
            [h(0), h(0), h(0)],
            16,
            2,
        )
        .unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triple_y_examples() {
        let v = triple_y_integral([0, 0, 0], [0, 0, 0], 16, 3).unwrap();
        assert!((v - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-12, "{v}");
        // odd total L vanishes by parity
        let v = triple_y_integral([1, 1, 1], [0, 1, -1], 32, 5).unwrap();
        assert!(v.abs() < 1e-12);
        // calibration case: a single power of 4 pi under the root
        let v = triple_y_integral([1, 1, 2], [0, 0, 0], 48, 7).unwrap();
        let z = exact_three_j_f64(&ThreeJArgs::new([h(2), h(2), h(4)], [h(0), h(0), h(0)]));
        let expect = (3.0 * 3.0 * 5.0 / (4.0 * PI)).sqrt() * z * z;
        assert!((v - expect).abs() < 1e-9, "{v} vs {expect}");
    }
}

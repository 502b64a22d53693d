//! Multiplicity-free SU(3) couplings `(l1,0) x (l2,0) -> (l3,mu3)`: irrep and
//! state bookkeeping, basis and invariant normalizations, 3j symbols and
//! isoscalar factors.
//!
//! Ground truth is the expansion of the coupling generating function
//! `(1 - h.g)^{-2} exp[t1 f5.(f1 x f3) / (1 - h.g)]` in the Fock-Bargmann
//! variables ([`su3_oracle`]); the closed form ([`su3_three_j`]) factors the
//! same data into normalization constants, a single terminating sum, and an
//! SU(2) 3j symbol, and must agree exactly. Basis norms are independently
//! verified against the Bargmann-measure overlap kernel
//! ([`basis_norm_overlap`]).

use std::collections::HashMap;

use num_bigint::BigInt;
use std::ops::Neg;

use num_traits::Zero;

use crate::numeric::{rat_int, BigRational, HalfInt, SqrtRational};
use crate::series::MultiSeries;
use crate::su2::{three_j, triangle_ok, ThreeJArgs, ThreeJMethod};
use crate::{Error, Result};

/// An SU(3) irrep labeled `(lambda, mu)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Su3Irrep {
    pub lambda: u32,
    pub mu: u32,
}

impl Su3Irrep {
    pub fn new(lambda: u32, mu: u32) -> Self {
        Su3Irrep { lambda, mu }
    }

    /// Weyl dimension `(lambda+1)(mu+1)(lambda+mu+2)/2`.
    pub fn dimension(&self) -> u64 {
        let (l, m) = (self.lambda as u64, self.mu as u64);
        (l + 1) * (m + 1) * (l + m + 2) / 2
    }
}

/// A basis state of an irrep, labeled `(p, q, r)` with
/// `0 <= p <= lambda`, `0 <= q <= mu`, `0 <= r <= 2t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Su3State {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl Su3State {
    pub fn new(p: u32, q: u32, r: u32) -> Self {
        Su3State { p, q, r }
    }

    pub fn is_valid_in(&self, irrep: &Su3Irrep) -> bool {
        self.p <= irrep.lambda && self.q <= irrep.mu && self.r <= self.twice_t(irrep) as u32
    }

    /// Triple hypercharge `y = -(2 lambda + mu) + 3 (p + q)`.
    pub fn y(&self, irrep: &Su3Irrep) -> i64 {
        -(2 * irrep.lambda as i64 + irrep.mu as i64) + 3 * (self.p as i64 + self.q as i64)
    }

    /// Twice the isospin, `2t = mu + p - q`.
    pub fn twice_t(&self, irrep: &Su3Irrep) -> i64 {
        irrep.mu as i64 + self.p as i64 - self.q as i64
    }

    pub fn t(&self, irrep: &Su3Irrep) -> HalfInt {
        HalfInt::from_twice(self.twice_t(irrep))
    }

    /// Isospin projection `t0 = t - r`.
    pub fn t0(&self, irrep: &Su3Irrep) -> HalfInt {
        HalfInt::from_twice(self.twice_t(irrep) - 2 * self.r as i64)
    }
}

/// One multiplicity-free coupling `(l1,0) x (l2,0) -> target`, with its
/// invariant exponents `k1 = mu3`, `k2 = l2 - mu3`, `k3 = l1 - mu3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Su3Coupling {
    pub lambda1: u32,
    pub lambda2: u32,
    pub target: Su3Irrep,
    pub k1: u32,
    pub k2: u32,
    pub k3: u32,
}

impl Su3Coupling {
    /// Builds the coupling with target `(l1 + l2 - 2 mu3, mu3)`.
    pub fn new(lambda1: u32, lambda2: u32, mu3: u32) -> Result<Self> {
        if mu3 > lambda1.min(lambda2) {
            return Err(Error::UnsupportedCoupling(format!(
                "mu3 = {mu3} exceeds min({lambda1}, {lambda2})"
            )));
        }
        Ok(Su3Coupling {
            lambda1,
            lambda2,
            target: Su3Irrep::new(lambda1 + lambda2 - 2 * mu3, mu3),
            k1: mu3,
            k2: lambda2 - mu3,
            k3: lambda1 - mu3,
        })
    }

    pub fn irrep1(&self) -> Su3Irrep {
        Su3Irrep::new(self.lambda1, 0)
    }

    pub fn irrep2(&self) -> Su3Irrep {
        Su3Irrep::new(self.lambda2, 0)
    }
}

/// All `(p, q, r)` states of an irrep; the count equals the Weyl dimension
/// and the derived `(y, t, t0)` triples are distinct.
pub fn enumerate_states(irrep: &Su3Irrep) -> Vec<Su3State> {
    let mut out = Vec::new();
    for p in 0..=irrep.lambda {
        for q in 0..=irrep.mu {
            let twice_t = irrep.mu as i64 + p as i64 - q as i64;
            for r in 0..=twice_t.max(0) {
                out.push(Su3State::new(p, q, r as u32));
            }
        }
    }
    out
}

/// Decomposition `(l1,0) x (l2,0) -> sum over mu3 of (l1+l2-2 mu3, mu3)`.
pub fn decompose(lambda1: u32, lambda2: u32) -> Vec<Su3Coupling> {
    (0..=lambda1.min(lambda2))
        .map(|mu3| Su3Coupling::new(lambda1, lambda2, mu3).unwrap())
        .collect()
}

/// Basis-state norm `N[(lambda mu), (alpha)]`:
/// `(-1)^q sqrt((mu+p+1)! (mu+lambda-q+1)! / ((lambda+1)! (2t+1)
/// p! (lambda-p)! q! (mu-q)! (t+t0)! (t-t0)!))`, calibrated against the
/// Bargmann overlap kernel (see `docs/errata.md`: the printed denominator
/// carries `(2t+1)!` and a spurious `lambda!`).
pub fn basis_norm(irrep: &Su3Irrep, state: &Su3State) -> Result<SqrtRational> {
    if !state.is_valid_in(irrep) {
        return Err(Error::Domain(format!("state {state:?} invalid in {irrep:?}")));
    }
    let (lam, mu) = (irrep.lambda as i64, irrep.mu as i64);
    let (p, q) = (state.p as i64, state.q as i64);
    let twice_t = state.twice_t(irrep);
    let t = state.t(irrep);
    let t0 = state.t0(irrep);
    let fact = crate::numeric::factorial;
    let num = fact(mu + p + 1)? * fact(mu + lam - q + 1)?;
    let den = fact(lam + 1)?
        * BigInt::from(twice_t + 1)
        * fact(p)?
        * fact(lam - p)?
        * fact(q)?
        * fact(mu - q)?
        * (t + t0).factorial()?
        * (t - t0).factorial()?;
    let sign = if q % 2 == 0 { 1 } else { -1 };
    SqrtRational::new(rat_int(sign), BigRational::new(num, den))
}

/// Independent magnitude oracle for [`basis_norm`]: the squared norm is the
/// diagonal coefficient of the Bargmann overlap kernel
/// `(1-G)^{-2} exp[(F - Q)/(1-G)]` in the doubled variable set, with
/// `G = y1 y1' (xi xi' + eta eta') + y2 y2'`,
/// `F = x1 x1' (xi xi' + eta eta') + x2 x2'` and `Q = x2 y2 x2' y2'`.
pub fn basis_norm_overlap(irrep: &Su3Irrep, state: &Su3State) -> Result<SqrtRational> {
    if !state.is_valid_in(irrep) {
        return Err(Error::Domain(format!("state {state:?} invalid in {irrep:?}")));
    }
    let twice_t = state.twice_t(irrep);
    let degree =
        (irrep.lambda as u32 + irrep.mu as u32 + twice_t as u32) * 2;
    let vars = ["x1", "x2", "y1", "y2", "xi", "eta", "X1", "X2", "Y1", "Y2", "XI", "ETA"];
    let var = |name: &str| MultiSeries::var(&vars, degree, name).unwrap();
    let pair = |a: &str, b: &str| var(a).mul(&var(b)).unwrap();
    let xixi = pair("xi", "XI").add(&pair("eta", "ETA")).unwrap();
    let g = pair("y1", "Y1").mul(&xixi).unwrap().add(&pair("y2", "Y2")).unwrap();
    let f = pair("x1", "X1").mul(&xixi).unwrap().add(&pair("x2", "X2")).unwrap();
    let qq = pair("x2", "X2").mul(&pair("y2", "Y2")).unwrap();
    let inv = g.geom(1)?; // (1 - G)^{-1}
    let kernel = g.geom(2)?.mul(&f.sub(&qq)?.mul(&inv)?.exp()?)?;
    // diagonal monomial exponents
    let (lam, mu) = (irrep.lambda, irrep.mu);
    let (p, q) = (state.p, state.q);
    let tpt0 = ((twice_t - (state.twice_t(irrep) - 2 * state.r as i64 - twice_t).abs()) / 2) as u32;
    let _ = tpt0;
    let xi_exp = (state.t(irrep) + state.t0(irrep)).as_integer().unwrap() as u32;
    let eta_exp = (state.t(irrep) - state.t0(irrep)).as_integer().unwrap() as u32;
    let half: Vec<u32> = vec![p, lam - p, mu - q, q, xi_exp, eta_exp];
    let mut exps = half.clone();
    exps.extend(half);
    let coeff = kernel.coefficient(&exps)?;
    SqrtRational::sqrt_of(coeff)
}

/// Invariant normalization `N(k_i)`: the unit-norm constant of the coupling
/// invariant, `sqrt(2 (mu3!) (l2-mu3)! (l1-mu3)! /
/// ((l1+l2-mu3+2)! (l1+l2-mu3+1)!))` (the leading factor binds as
/// `2 * (mu3!)`; the unit-norm sweep fixes the reading).
pub fn invariant_norm(c: &Su3Coupling) -> SqrtRational {
    let fact = crate::numeric::factorial_big;
    let num = BigInt::from(2)
        * fact(c.k1 as usize)
        * fact(c.k2 as usize)
        * fact(c.k3 as usize);
    let s = (c.lambda1 + c.lambda2 - c.target.mu) as usize;
    let den = fact(s + 2) * fact(s + 1);
    SqrtRational::sqrt_of(BigRational::new(num, den)).unwrap()
}

/// R-conjugation: maps a state of `(lambda, mu)` to the conjugate irrep
/// `(mu, lambda)` via `p -> mu - q`, `q -> lambda - p`, `t0 -> -t0`, with
/// the phase `(-1)^(y/2 - t0)`; the exponent `-lambda - mu + p + 2q + r` is
/// always integral.
pub fn r_conjugate(irrep: &Su3Irrep, state: &Su3State) -> Result<(Su3Irrep, Su3State, i64)> {
    if !state.is_valid_in(irrep) {
        return Err(Error::Domain(format!("state {state:?} invalid in {irrep:?}")));
    }
    let conj_irrep = Su3Irrep::new(irrep.mu, irrep.lambda);
    let twice_t = state.twice_t(irrep);
    let conj_state = Su3State::new(
        irrep.mu - state.q,
        irrep.lambda - state.p,
        (twice_t - state.r as i64) as u32,
    );
    let e = -(irrep.lambda as i64) - irrep.mu as i64
        + state.p as i64
        + 2 * state.q as i64
        + state.r as i64;
    let phase = if e % 2 == 0 { 1 } else { -1 };
    Ok((conj_irrep, conj_state, phase))
}

// ---------------------------------------------------------------------------
// Generating-function oracle
// ---------------------------------------------------------------------------

const GF_VARS: [&str; 14] = [
    "ax1", "ax2", "axi", "aeta", // system 1: (lambda1, 0)
    "bx1", "bx2", "bxi", "beta", // system 2: (lambda2, 0)
    "cx1", "cx2", "cy1", "cy2", "cxi", "ceta", // system 3: conjugate target
];

fn gf_var(degree: u32, name: &str) -> MultiSeries {
    MultiSeries::var(&GF_VARS, degree, name).unwrap()
}

/// `[u^a u^b] = xi_a eta_b - eta_a xi_b` over the oracle variable set.
fn gf_bracket(degree: u32, xi_a: &str, eta_a: &str, xi_b: &str, eta_b: &str) -> MultiSeries {
    let t1 = gf_var(degree, xi_a).mul(&gf_var(degree, eta_b)).unwrap();
    let t2 = gf_var(degree, eta_a).mul(&gf_var(degree, xi_b)).unwrap();
    t1.sub(&t2).unwrap()
}

fn gf_product(degree: u32, names: &[&str]) -> MultiSeries {
    let mut acc = MultiSeries::one(&GF_VARS, degree);
    for n in names {
        acc = acc.mul(&gf_var(degree, n)).unwrap();
    }
    acc
}

/// The three elementary polynomials of the coupling generating function:
/// `F = f5 . (f1 x f3)`, `A = f3 . g`, `B = f1 . g`.
fn gf_polynomials(degree: u32) -> (MultiSeries, MultiSeries, MultiSeries) {
    let u51 = gf_bracket(degree, "cxi", "ceta", "axi", "aeta");
    let u35 = gf_bracket(degree, "bxi", "beta", "cxi", "ceta");
    let u13 = gf_bracket(degree, "axi", "aeta", "bxi", "beta");
    let f = gf_product(degree, &["cx1", "ax1", "bx2"])
        .mul(&u51)
        .unwrap()
        .add(&gf_product(degree, &["cx1", "bx1", "ax2"]).mul(&u35).unwrap())
        .unwrap()
        .add(&gf_product(degree, &["cx2", "ax1", "bx1"]).mul(&u13).unwrap())
        .unwrap();
    let a = gf_product(degree, &["bx1", "cy1"])
        .mul(&u35)
        .unwrap()
        .add(&gf_product(degree, &["bx2", "cy2"]))
        .unwrap();
    let b = gf_product(degree, &["ax1", "cy1"])
        .mul(&u51)
        .unwrap()
        .neg()
        .add(&gf_product(degree, &["ax2", "cy2"]))
        .unwrap();
    (f, a, b)
}

/// The polynomial multiplying `t1^k1 t2^k2 t3^k3` in the expansion of the
/// coupling generating function, together with its combinatorial weight:
/// expanding `(1 - h.g)^{-2} exp[t1 F / (1 - h.g)]` with `h.g = t2 A + t3 B`
/// gives `C(k1+k2+k3+1, k2+k3) C(k2+k3, k2) F^k1 A^k2 B^k3 / k1! * k1!`.
fn gf_coupling_polynomial(c: &Su3Coupling, degree: u32) -> Result<MultiSeries> {
    let (f, a, b) = gf_polynomials(degree);
    let kk = (c.k2 + c.k3) as i64;
    let weight = BigRational::new(
        crate::numeric::binomial(c.k1 as i64 + kk + 1, kk)
            * crate::numeric::binomial(kk, c.k2 as i64),
        crate::numeric::factorial_big(c.k1 as usize),
    );
    let p = f.pow(c.k1)?.mul(&a.pow(c.k2)?)?.mul(&b.pow(c.k3)?)?;
    Ok(p.scale(&weight))
}

fn oracle_degree(c: &Su3Coupling) -> u32 {
    5 * c.k1 + 4 * (c.k2 + c.k3)
}

/// Ground-truth 3j symbols of a coupling from the generating-function
/// expansion: every state triple at once. Keys are
/// `(a1, a2, a3)` with `a3` labeled in the target irrep `(l3, mu3)`; the
/// overall sign per coupling is normalized so the first nonzero value in
/// state-enumeration order is positive.
pub fn su3_oracle(
    c: &Su3Coupling,
    max_degree: u32,
) -> Result<HashMap<(Su3State, Su3State, Su3State), SqrtRational>> {
    let degree = oracle_degree(c);
    if max_degree < degree {
        return Err(Error::DegreeBudget(format!(
            "coupling needs degree {degree}, budget {max_degree}"
        )));
    }
    let poly = gf_coupling_polynomial(c, degree)?;
    let irrep1 = c.irrep1();
    let irrep2 = c.irrep2();
    let conj_irrep = Su3Irrep::new(c.target.mu, c.target.lambda);
    let nk = invariant_norm(c);
    let mut raw: HashMap<(Su3State, Su3State, Su3State), SqrtRational> = HashMap::new();
    for (exps, coeff) in poly.terms() {
        let [ax1, ax2, axi, aeta, bx1, bx2, bxi, beta, cx1, cx2, cy1, cy2, cxi, ceta]: [u32; 14] =
            exps.as_slice().try_into().expect("14 variables");
        debug_assert_eq!(ax1 + ax2, c.lambda1);
        debug_assert_eq!(bx1 + bx2, c.lambda2);
        debug_assert_eq!(axi + aeta, ax1);
        debug_assert_eq!(bxi + beta, bx1);
        debug_assert_eq!(cx1 + cx2, c.target.mu);
        debug_assert_eq!(cy1 + cy2, c.target.lambda);
        let s1 = Su3State::new(ax1, 0, aeta);
        let s2 = Su3State::new(bx1, 0, beta);
        let sb = Su3State::new(cx1, cy2, ceta);
        debug_assert!(sb.is_valid_in(&conj_irrep));
        debug_assert_eq!(sb.twice_t(&conj_irrep), (cxi + ceta) as i64);
        // conjugate back into the target irrep, carrying the R phase; the
        // extra (-1)^r3 makes the SU(2) factorization projection-covariant
        // with the bare 3j symbol (see docs/errata.md)
        let (t_irrep, a3, phase) = r_conjugate(&conj_irrep, &sb)?;
        debug_assert_eq!(t_irrep, c.target);
        let r_phase = if a3.r % 2 == 0 { 1 } else { -1 };
        let n1 = basis_norm(&irrep1, &s1)?;
        let n2 = basis_norm(&irrep2, &s2)?;
        let nb = basis_norm(&conj_irrep, &sb)?;
        let value = nk
            .scale(coeff)
            .scale(&rat_int(phase * r_phase))
            .div(&n1.mul(&n2).mul(&nb))?;
        raw.insert((s1, s2, a3), value);
    }
    normalize_coupling_sign(&mut raw);
    Ok(raw)
}

/// Flips every sign when the first nonzero value (in state order) is
/// negative; applied identically by the oracle and the closed form so the
/// per-coupling phase convention is deterministic.
fn normalize_coupling_sign(map: &mut HashMap<(Su3State, Su3State, Su3State), SqrtRational>) {
    let mut keys: Vec<_> = map.keys().cloned().collect();
    keys.sort();
    let flip = keys
        .iter()
        .find_map(|k| {
            let v = &map[k];
            match v.signum() {
                0 => None,
                s => Some(s < 0),
            }
        })
        .unwrap_or(false);
    if flip {
        for v in map.values_mut() {
            *v = v.clone().neg();
        }
    }
}

static SIGN_CACHE: std::sync::RwLock<Option<HashMap<Su3Coupling, i64>>> =
    std::sync::RwLock::new(None);

/// The sign the closed form must apply to reproduce the oracle's
/// per-coupling normalization. Computed from the closed form itself, so the
/// two routes stay independent.
fn coupling_reference_sign(c: &Su3Coupling) -> i64 {
    {
        let guard = SIGN_CACHE.read().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(&s) = map.get(c) {
                return s;
            }
        }
    }
    let sign = coupling_reference_sign_uncached(c);
    let mut guard = SIGN_CACHE.write().unwrap();
    *guard.get_or_insert_with(HashMap::new).entry(*c).or_insert(sign)
}

fn coupling_reference_sign_uncached(c: &Su3Coupling) -> i64 {
    let states1 = enumerate_states(&c.irrep1());
    let states2 = enumerate_states(&c.irrep2());
    let states3 = enumerate_states(&c.target);
    let mut triples: Vec<(Su3State, Su3State, Su3State)> = Vec::new();
    for s1 in &states1 {
        for s2 in &states2 {
            for s3 in &states3 {
                triples.push((*s1, *s2, *s3));
            }
        }
    }
    triples.sort();
    for (s1, s2, s3) in triples {
        let v = su3_three_j_unnormalized(c, &s1, &s2, &s3).unwrap_or_else(|_| SqrtRational::zero());
        match v.signum() {
            0 => continue,
            s => return s as i64,
        }
    }
    1
}

// ---------------------------------------------------------------------------
// Closed form
// ---------------------------------------------------------------------------

fn su3_three_j_unnormalized(
    c: &Su3Coupling,
    a1: &Su3State,
    a2: &Su3State,
    a3: &Su3State,
) -> Result<SqrtRational> {
    if a1.q != 0 || a2.q != 0 {
        return Err(Error::Domain("states of (lambda, 0) must have q = 0".into()));
    }
    let irrep1 = c.irrep1();
    let irrep2 = c.irrep2();
    if !a1.is_valid_in(&irrep1) || !a2.is_valid_in(&irrep2) || !a3.is_valid_in(&c.target) {
        return Err(Error::Domain("state invalid in its irrep".into()));
    }
    // selection rules: hypercharge balance, projection balance, isospin
    // triangle with integer total
    if a1.y(&irrep1) + a2.y(&irrep2) != a3.y(&c.target) {
        return Ok(SqrtRational::zero());
    }
    let t1 = a1.t(&irrep1);
    let t2 = a2.t(&irrep2);
    let t3 = a3.t(&c.target);
    let tau1 = a1.t0(&irrep1);
    let tau2 = a2.t0(&irrep2);
    let tau3 = a3.t0(&c.target);
    if (tau1 + tau2 - tau3).twice() != 0 {
        return Ok(SqrtRational::zero());
    }
    if !triangle_ok(t1, t2, t3) {
        return Ok(SqrtRational::zero());
    }
    let su2 = three_j(&ThreeJArgs::new([t1, t2, t3], [tau1, tau2, -tau3]), ThreeJMethod::Auto);
    if su2.is_zero() {
        return Ok(SqrtRational::zero());
    }

    let total = (t1 + t2 + t3).as_integer().unwrap();
    let cap_b = (t1 + t3 - t2).as_integer().unwrap(); // [u5 u1] exponent
    let cap_g = (t2 + t3 - t1).as_integer().unwrap(); // [u3 u5] exponent
    let cap_e = (t1 + t2 - t3).as_integer().unwrap(); // [u1 u3] exponent
    let p3 = a3.p as i64;
    // hypercharge balance forces the [u1 u3] content to equal q3
    debug_assert_eq!(cap_e, a3.q as i64);

    // conjugate label of a3, whose norm pairs with the generating function
    let (conj_irrep, sb, phase) = r_conjugate(&c.target, a3)?;

    // single terminating sum over how the [u5 u1] content splits between the
    // cubic invariant and the bilinear one
    let k2 = c.k2 as i64;
    let k3 = c.k3 as i64;
    let y_split = p3; // y1-exponent of the conjugate monomial
    let fact = |n: i64| -> BigRational {
        BigRational::from_integer(crate::numeric::factorial_big(n as usize))
    };
    let lo = 0.max(y_split - k2).max(y_split - cap_g);
    let hi = k3.min(y_split).min(cap_b);
    let mut sum = BigRational::zero();
    for b in lo..=hi {
        let a_split = y_split - b;
        let c_split = cap_b - b;
        let d_split = cap_g - a_split;
        let e_split = cap_e;
        if c_split < 0 || d_split < 0 {
            continue;
        }
        debug_assert_eq!(c_split + d_split + e_split, c.k1 as i64);
        let binoms = BigRational::from_integer(
            crate::numeric::binomial(k2, a_split) * crate::numeric::binomial(k3, b),
        );
        let term = binoms / (fact(c_split) * fact(d_split) * fact(e_split));
        if b % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return Ok(SqrtRational::zero());
    }

    let kk = (c.k2 + c.k3) as i64;
    let weight = BigRational::from_integer(
        crate::numeric::binomial(c.k1 as i64 + kk + 1, kk) * crate::numeric::binomial(kk, c.k2 as i64),
    );

    // sqrt((L+1)! B! G! E! / prod (t_i +- tau_i)!)
    let mut rad = fact(total + 1) * fact(cap_b) * fact(cap_g) * fact(cap_e);
    for (t, tau) in [(t1, tau1), (t2, tau2), (t3, tau3)] {
        rad /= BigRational::from_integer(
            (t + tau).factorial().unwrap() * (t - tau).factorial().unwrap(),
        );
    }
    let root = SqrtRational::sqrt_of(rad)?;

    let n1 = basis_norm(&irrep1, a1)?;
    let n2 = basis_norm(&irrep2, a2)?;
    let nb = basis_norm(&conj_irrep, &sb)?;
    let nk = invariant_norm(c);
    let r_phase = if a3.r % 2 == 0 { 1 } else { -1 };

    let value = nk
        .scale(&(sum * weight * rat_int(phase * r_phase)))
        .mul(&root)
        .mul(&su2)
        .div(&n1.mul(&n2).mul(&nb))?;
    Ok(value)
}

/// Closed-form SU(3) 3j symbol: phase, normalization constants, a single
/// terminating sum, and an SU(2) 3j factor, with the same per-coupling sign
/// normalization as [`su3_oracle`]. Selection-rule violations give exact
/// zero.
pub fn su3_three_j(
    c: &Su3Coupling,
    a1: &Su3State,
    a2: &Su3State,
    a3: &Su3State,
) -> Result<SqrtRational> {
    let v = su3_three_j_unnormalized(c, a1, a2, a3)?;
    if v.is_zero() {
        return Ok(v);
    }
    Ok(v.scale(&rat_int(coupling_reference_sign(c))))
}

/// Isoscalar factor for a hypercharge/isospin triple: the SU(3) 3j divided
/// by its SU(2) 3j factor, independent of the chosen projection splitting.
/// Errors when the `(y, t)` labels do not occur in the coupling or when
/// every SU(2) factor vanishes.
pub fn isoscalar_factor(
    c: &Su3Coupling,
    y1: i64,
    t1: HalfInt,
    y2: i64,
    t2: HalfInt,
    y3: i64,
    t3: HalfInt,
) -> Result<SqrtRational> {
    let s1 = state_from_labels(&c.irrep1(), y1, t1)?;
    let s2 = state_from_labels(&c.irrep2(), y2, t2)?;
    let s3 = state_from_labels(&c.target, y3, t3)?;
    let mut found: Option<SqrtRational> = None;
    let mut t01 = -t1.twice();
    while t01 <= t1.twice() {
        let tau1 = HalfInt::from_twice(t01);
        t01 += 2;
        let mut t02 = -t2.twice();
        while t02 <= t2.twice() {
            let tau2 = HalfInt::from_twice(t02);
            t02 += 2;
            let tau3 = tau1 + tau2;
            if tau3.abs() > t3 {
                continue;
            }
            let su2 =
                three_j(&ThreeJArgs::new([t1, t2, t3], [tau1, tau2, -tau3]), ThreeJMethod::Auto);
            if su2.is_zero() {
                continue;
            }
            let a1 = Su3State::new(s1.p, s1.q, ((t1 - tau1).twice() / 2) as u32);
            let a2 = Su3State::new(s2.p, s2.q, ((t2 - tau2).twice() / 2) as u32);
            let a3 = Su3State::new(s3.p, s3.q, ((t3 - tau3).twice() / 2) as u32);
            let w = su3_three_j(c, &a1, &a2, &a3)?;
            let ratio = w.div(&su2)?;
            match &found {
                None => found = Some(ratio),
                Some(prev) => {
                    if *prev != ratio {
                        return Err(Error::Domain(format!(
                            "isoscalar ratio depends on projections: {prev} vs {ratio}"
                        )));
                    }
                }
            }
        }
    }
    found.ok_or_else(|| {
        Error::UndefinedIsoscalar(format!("(y,t) = ({y1},{t1}), ({y2},{t2}), ({y3},{t3})"))
    })
}

/// Finds the `(p, q)` cell of an irrep carrying hypercharge `y` and isospin
/// `t` (the `r` label is left zero).
pub fn state_from_labels(irrep: &Su3Irrep, y: i64, t: HalfInt) -> Result<Su3State> {
    let (lam, mu) = (irrep.lambda as i64, irrep.mu as i64);
    let sum3 = y + 2 * lam + mu;
    if sum3 % 3 != 0 {
        return Err(Error::Domain(format!("hypercharge {y} not in irrep {irrep:?}")));
    }
    let pq = sum3 / 3; // p + q
    let diff = t.twice() - mu; // p - q
    if (pq + diff) % 2 != 0 {
        return Err(Error::Domain(format!("(y, t) = ({y}, {t}) not in irrep {irrep:?}")));
    }
    let p = (pq + diff) / 2;
    let q = (pq - diff) / 2;
    if !(0..=lam).contains(&p) || !(0..=mu).contains(&q) {
        return Err(Error::Domain(format!("(y, t) = ({y}, {t}) not in irrep {irrep:?}")));
    }
    Ok(Su3State::new(p as u32, q as u32, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn dimensions() {
        assert_eq!(Su3Irrep::new(0, 0).dimension(), 1);
        assert_eq!(Su3Irrep::new(1, 0).dimension(), 3);
        assert_eq!(Su3Irrep::new(1, 1).dimension(), 8);
        assert_eq!(Su3Irrep::new(2, 1).dimension(), 15);
    }

    #[test]
    fn state_enumeration_counts_and_labels() {
        for lam in 0..=6u32 {
            for mu in 0..=6u32 {
                let irrep = Su3Irrep::new(lam, mu);
                let states = enumerate_states(&irrep);
                assert_eq!(states.len() as u64, irrep.dimension(), "{irrep:?}");
                let mut labels: Vec<(i64, i64, i64)> = states
                    .iter()
                    .map(|s| (s.y(&irrep), s.twice_t(&irrep), s.t0(&irrep).twice()))
                    .collect();
                labels.sort();
                labels.dedup();
                assert_eq!(labels.len() as u64, irrep.dimension(), "duplicate labels in {irrep:?}");
            }
        }
        // fundamental: y in {-2, 1}
        let irrep = Su3Irrep::new(1, 0);
        let mut ys: Vec<i64> = enumerate_states(&irrep).iter().map(|s| s.y(&irrep)).collect();
        ys.sort();
        assert_eq!(ys, vec![-2, 1, 1]);
        assert_eq!(enumerate_states(&Su3Irrep::new(2, 0)).len(), 6);
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose(1, 1);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].target, Su3Irrep::new(2, 0));
        assert_eq!((d[0].k1, d[0].k2, d[0].k3), (0, 1, 1));
        assert_eq!(d[1].target, Su3Irrep::new(0, 1));
        assert_eq!((d[1].k1, d[1].k2, d[1].k3), (1, 0, 0));
        assert_eq!(6 + 3, 9);

        let d = decompose(1, 0);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].target, Su3Irrep::new(1, 0));

        let d = decompose(2, 2);
        let dims: Vec<u64> = d.iter().map(|c| c.target.dimension()).collect();
        assert_eq!(dims, vec![15, 15, 6]);
        assert_eq!(dims.iter().sum::<u64>(), 36);
    }

    #[test]
    fn dimension_sums_match_product() {
        for l1 in 0..=8u32 {
            for l2 in 0..=8u32 {
                let total: u64 = decompose(l1, l2).iter().map(|c| c.target.dimension()).sum();
                let product = Su3Irrep::new(l1, 0).dimension() * Su3Irrep::new(l2, 0).dimension();
                assert_eq!(total, product, "({l1}, {l2})");
            }
        }
    }

    #[test]
    fn basis_norm_examples() {
        let trivial = Su3Irrep::new(0, 0);
        assert_eq!(
            basis_norm(&trivial, &Su3State::new(0, 0, 0)).unwrap(),
            SqrtRational::one()
        );
        // (0,1) lowest multiplet norm sqrt(2)
        let anti = Su3Irrep::new(0, 1);
        let v = basis_norm(&anti, &Su3State::new(0, 0, 0)).unwrap();
        assert_eq!(v, SqrtRational::sqrt_of(rat_int(2)).unwrap());
        // (1,1), (p,q,r) = (0,1,0) carries the (-1)^q sign
        let octet = Su3Irrep::new(1, 1);
        let v = basis_norm(&octet, &Su3State::new(0, 1, 0)).unwrap();
        assert!(v.signum() < 0);
        assert!(basis_norm(&octet, &Su3State::new(2, 0, 0)).is_err());
    }

    #[test]
    fn basis_norm_matches_bargmann_overlap() {
        for lam in 0..=3u32 {
            for mu in 0..=3u32 {
                let irrep = Su3Irrep::new(lam, mu);
                for s in enumerate_states(&irrep) {
                    let formula = basis_norm(&irrep, &s).unwrap().abs();
                    let oracle = basis_norm_overlap(&irrep, &s).unwrap();
                    assert_eq!(formula, oracle, "{irrep:?} {s:?}");
                }
            }
        }
    }

    #[test]
    fn conjugation_involution() {
        let irrep = Su3Irrep::new(2, 1);
        for s in enumerate_states(&irrep) {
            let (ci, cs, _) = r_conjugate(&irrep, &s).unwrap();
            assert_eq!(ci, Su3Irrep::new(1, 2));
            assert!(cs.is_valid_in(&ci));
            let (ii, ss, _) = r_conjugate(&ci, &cs).unwrap();
            assert_eq!(ii, irrep);
            assert_eq!(ss, s);
            // conjugation flips y and t0, keeps t
            assert_eq!(cs.y(&ci), -s.y(&irrep));
            assert_eq!(cs.t(&ci), s.t(&irrep));
            assert_eq!(cs.t0(&ci), -s.t0(&irrep));
        }
        let trivial = Su3Irrep::new(0, 0);
        let (ci, cs, ph) = r_conjugate(&trivial, &Su3State::new(0, 0, 0)).unwrap();
        assert_eq!((ci, cs, ph), (trivial, Su3State::new(0, 0, 0), 1));
    }

    #[test]
    fn oracle_trivial_coupling() {
        let c = Su3Coupling::new(0, 0, 0).unwrap();
        let map = su3_oracle(&c, 64).unwrap();
        assert_eq!(map.len(), 1);
        let key = (Su3State::new(0, 0, 0), Su3State::new(0, 0, 0), Su3State::new(0, 0, 0));
        assert_eq!(map[&key], SqrtRational::one());
    }

    #[test]
    fn oracle_unit_norm() {
        for (l1, l2, mu3) in [(1, 0, 0), (1, 1, 0), (1, 1, 1), (2, 1, 1), (2, 2, 2)] {
            let c = Su3Coupling::new(l1, l2, mu3).unwrap();
            let map = su3_oracle(&c, 64).unwrap();
            let mut total = BigRational::zero();
            for v in map.values() {
                total += v.square();
            }
            assert_eq!(total, rat_int(1), "coupling {c:?}");
        }
    }

    #[test]
    fn oracle_respects_selection_rules() {
        let c = Su3Coupling::new(2, 1, 1).unwrap();
        let map = su3_oracle(&c, 64).unwrap();
        let i1 = c.irrep1();
        let i2 = c.irrep2();
        for ((s1, s2, s3), v) in &map {
            assert!(!v.is_zero());
            assert_eq!(s1.y(&i1) + s2.y(&i2), s3.y(&c.target));
            assert_eq!(
                (s1.t0(&i1) + s2.t0(&i2)).twice(),
                s3.t0(&c.target).twice()
            );
        }
    }

    #[test]
    fn closed_form_matches_oracle_small() {
        for (l1, l2, mu3) in [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 1, 1), (2, 1, 0), (2, 1, 1)] {
            let c = Su3Coupling::new(l1, l2, mu3).unwrap();
            let map = su3_oracle(&c, 64).unwrap();
            for s1 in enumerate_states(&c.irrep1()) {
                for s2 in enumerate_states(&c.irrep2()) {
                    for s3 in enumerate_states(&c.target) {
                        let closed = su3_three_j(&c, &s1, &s2, &s3).unwrap();
                        let oracle =
                            map.get(&(s1, s2, s3)).cloned().unwrap_or_else(SqrtRational::zero);
                        assert_eq!(closed, oracle, "coupling {c:?} states {s1:?} {s2:?} {s3:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn coupling_polynomial_matches_full_series_expansion() {
        // expand the full generating function with the series engine
        // (geometric and exponential) over the 17-variable space and compare
        // the t-monomial slice with the direct per-coupling polynomial
        let c = Su3Coupling::new(1, 1, 1).unwrap();
        let degree = oracle_degree(&c);
        let fast = gf_coupling_polynomial(&c, degree).unwrap();

        let mut vars17: Vec<&str> = GF_VARS.to_vec();
        vars17.extend(["t1", "t2", "t3"]);
        let full_deg = degree + c.k1 + c.k2 + c.k3;
        let lift = |s: &MultiSeries| -> MultiSeries {
            let mut out = MultiSeries::zero(&vars17, full_deg);
            for (e, coeff) in s.terms() {
                let mut exps = e.clone();
                exps.extend([0, 0, 0]);
                out = out
                    .add(&MultiSeries::monomial(&vars17, full_deg, &exps, coeff.clone()).unwrap())
                    .unwrap();
            }
            out
        };
        let (f, a, b) = gf_polynomials(degree);
        let t1 = MultiSeries::var(&vars17, full_deg, "t1").unwrap();
        let t2 = MultiSeries::var(&vars17, full_deg, "t2").unwrap();
        let t3 = MultiSeries::var(&vars17, full_deg, "t3").unwrap();
        let hg = t2.mul(&lift(&a)).unwrap().add(&t3.mul(&lift(&b)).unwrap()).unwrap();
        let arg = t1.mul(&lift(&f)).unwrap().mul(&hg.geom(1).unwrap()).unwrap();
        let g = hg.geom(2).unwrap().mul(&arg.exp().unwrap()).unwrap();
        // slice the coefficient of t1^k1 t2^k2 t3^k3
        for (exps, coeff) in fast.terms() {
            let mut full_exps = exps.clone();
            full_exps.extend([c.k1, c.k2, c.k3]);
            assert_eq!(&g.coefficient(&full_exps).unwrap(), coeff);
        }
        // and no stray terms at that t-slice
        let slice_count = g
            .terms()
            .filter(|(e, _)| e[14] == c.k1 && e[15] == c.k2 && e[16] == c.k3)
            .count();
        assert_eq!(slice_count, fast.num_terms());
    }

    #[test]
    fn isoscalar_examples() {
        let trivial = Su3Coupling::new(0, 0, 0).unwrap();
        assert_eq!(
            isoscalar_factor(&trivial, 0, HalfInt::ZERO, 0, HalfInt::ZERO, 0, HalfInt::ZERO)
                .unwrap(),
            SqrtRational::one()
        );
        // (1,0) x (1,0) -> (0,1): all three hypercharge/isospin rows carry
        // isoscalar factors of equal magnitude and their squares sum to 1
        let c = Su3Coupling::new(1, 1, 1).unwrap();
        let h = HalfInt::from_twice;
        let f1 = isoscalar_factor(&c, 1, h(1), 1, h(1), 2, h(0)).unwrap();
        let f2 = isoscalar_factor(&c, 1, h(1), -2, h(0), -1, h(1)).unwrap();
        let f3 = isoscalar_factor(&c, -2, h(0), 1, h(1), -1, h(1)).unwrap();
        assert_eq!(f1.abs(), f2.abs());
        assert_eq!(f1.abs(), f3.abs());
        assert_eq!(f1.square() + f2.square() + f3.square(), rat_int(1));
        // a (y, t) triple outside the coupling errors
        assert!(isoscalar_factor(&c, 3, h(0), 0, h(0), 3, h(0)).is_err());
    }

    #[test]
    fn isoscalar_projection_independence() {
        let c = Su3Coupling::new(1, 1, 0).unwrap();
        let h = HalfInt::from_twice;
        // (2,0) target, stretched (y,t): t1 = t2 = 1/2, t3 = 1: two
        // projection splittings feed the same ratio (asserted internally)
        let f = isoscalar_factor(&c, 1, h(1), 1, h(1), 2, h(2)).unwrap();
        assert!(!f.is_zero());
    }
}

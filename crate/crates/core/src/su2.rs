//! Exact SU(2) 3j and 6j symbols.
//!
//! Ground truth is the multinomial expansion of the coupling invariant
//! `[u2 u3]^(L-2j1) [u3 u1]^(L-2j2) [u1 u2]^(L-2j3)` read off against the
//! monomial basis: [`oracle_three_j`]. The closed single-sum formulas
//! ([`three_j_vdw`], [`three_j_wigner`]) are implemented in their corrected
//! forms; every correction relative to the printed source formulas is listed
//! in the [`crate::errata`] registry and in `docs/errata.md`, and exhaustive
//! agreement with the oracle is enforced by the verification suites.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::numeric::{rat_int, BigRational, HalfInt, SqrtRational};
use crate::series::MultiSeries;
use crate::{Error, Result};

/// Arguments of a 3j symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThreeJArgs {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub j3: HalfInt,
    pub m1: HalfInt,
    pub m2: HalfInt,
    pub m3: HalfInt,
}

impl ThreeJArgs {
    pub fn new(j: [HalfInt; 3], m: [HalfInt; 3]) -> Self {
        ThreeJArgs { j1: j[0], j2: j[1], j3: j[2], m1: m[0], m2: m[1], m3: m[2] }
    }

    pub fn js(&self) -> [HalfInt; 3] {
        [self.j1, self.j2, self.j3]
    }

    pub fn ms(&self) -> [HalfInt; 3] {
        [self.m1, self.m2, self.m3]
    }

    fn key(&self) -> [i64; 6] {
        [
            self.j1.twice(),
            self.j2.twice(),
            self.j3.twice(),
            self.m1.twice(),
            self.m2.twice(),
            self.m3.twice(),
        ]
    }

    /// Magnitudes valid, projections bounded and of matching integrality,
    /// zero projection sum, triangle rule: everything short of the parity
    /// zeros. Returns false when the symbol is identically zero for a
    /// structural reason.
    pub fn is_nonzero_candidate(&self) -> bool {
        let j = self.js();
        let m = self.ms();
        for i in 0..3 {
            if j[i].is_negative()
                || m[i].abs() > j[i]
                || (j[i] + m[i]).is_half_odd()
            {
                return false;
            }
        }
        if (m[0] + m[1] + m[2]).twice() != 0 {
            return false;
        }
        triangle_ok(j[0], j[1], j[2])
    }
}

/// Arguments of a 6j symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SixJArgs {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub j3: HalfInt,
    pub l1: HalfInt,
    pub l2: HalfInt,
    pub l3: HalfInt,
}

impl SixJArgs {
    pub fn new(j: [HalfInt; 3], l: [HalfInt; 3]) -> Self {
        SixJArgs { j1: j[0], j2: j[1], j3: j[2], l1: l[0], l2: l[1], l3: l[2] }
    }

    /// The four triads that must satisfy the triangle rule for a nonzero 6j.
    pub fn triads(&self) -> [[HalfInt; 3]; 4] {
        [
            [self.j1, self.j2, self.j3],
            [self.j1, self.l2, self.l3],
            [self.l1, self.j2, self.l3],
            [self.l1, self.l2, self.j3],
        ]
    }
}

/// Method selector for the canonical 3j entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ThreeJMethod {
    #[default]
    Auto,
    Vdw,
    Wigner,
    Oracle,
}

/// `|j1-j2| <= j3 <= j1+j2` with integer total.
pub fn triangle_ok(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> bool {
    if (j1 + j2 + j3).is_half_odd() {
        return false;
    }
    j3 <= j1 + j2 && j3 >= (j1 - j2).abs()
}

/// `(-1)^h` for an integer-valued half-integer.
fn phase_of(h: HalfInt) -> i64 {
    h.parity().expect("phase exponent must be integral")
}

// ---------------------------------------------------------------------------
// Generating-function oracle
// ---------------------------------------------------------------------------

const ORACLE_VARS: [&str; 6] = ["x1", "e1", "x2", "e2", "x3", "e3"];

/// Elementary invariant `[u^a u^b] = xi_a eta_b - eta_a xi_b` as a series.
fn bracket(a: usize, b: usize, degree: u32) -> MultiSeries {
    if degree < 2 {
        // only reachable for the trivial triangle, where every bracket
        // enters at power zero
        return MultiSeries::zero(&ORACLE_VARS, degree);
    }
    let mut e1 = [0u32; 6];
    e1[2 * a] = 1; // xi_a
    e1[2 * b + 1] = 1; // eta_b
    let mut e2 = [0u32; 6];
    e2[2 * a + 1] = 1; // eta_a
    e2[2 * b] = 1; // xi_b
    let t1 = MultiSeries::monomial(&ORACLE_VARS, degree, &e1, rat_int(1)).unwrap();
    let t2 = MultiSeries::monomial(&ORACLE_VARS, degree, &e2, rat_int(-1)).unwrap();
    t1.add(&t2).unwrap()
}

/// Expanded coupling invariant for a valid triangle `(j1, j2, j3)`, or `None`
/// when the triangle rule fails. The coefficient of
/// `prod_i xi_i^(j_i+m_i) eta_i^(j_i-m_i)` carries the 3j symbol for every
/// projection tuple at once.
pub fn invariant_series(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> Option<MultiSeries> {
    if !triangle_ok(j1, j2, j3) || j1.is_negative() || j2.is_negative() || j3.is_negative() {
        return None;
    }
    let total = j1 + j2 + j3;
    let l = total.as_integer().ok()?;
    let a1 = (j2 + j3 - j1).as_integer().unwrap() as u32;
    let a2 = (j3 + j1 - j2).as_integer().unwrap() as u32;
    let a3 = (j1 + j2 - j3).as_integer().unwrap() as u32;
    let degree = 2 * l as u32;
    let b23 = bracket(1, 2, degree);
    let b31 = bracket(2, 0, degree);
    let b12 = bracket(0, 1, degree);
    let p = b23.pow(a1).unwrap().mul(&b31.pow(a2).unwrap()).unwrap();
    Some(p.mul(&b12.pow(a3).unwrap()).unwrap())
}

/// Reads one 3j value out of an expanded invariant.
pub fn oracle_read(inv: &MultiSeries, args: &ThreeJArgs) -> SqrtRational {
    if !args.is_nonzero_candidate() {
        return SqrtRational::zero();
    }
    let exps: Vec<u32> = [
        (args.j1, args.m1),
        (args.j2, args.m2),
        (args.j3, args.m3),
    ]
    .iter()
    .flat_map(|(j, m)| {
        [((*j + *m).twice() / 2) as u32, ((*j - *m).twice() / 2) as u32]
    })
    .collect();
    let coeff = inv.coefficient(&exps).expect("projection exponents fit the budget");
    if coeff.is_zero() {
        return SqrtRational::zero();
    }
    let total = args.j1 + args.j2 + args.j3;
    let l = total.as_integer().unwrap();
    let mut radicand = BigRational::one();
    for (j, m) in [(args.j1, args.m1), (args.j2, args.m2), (args.j3, args.m3)] {
        radicand *= BigRational::from_integer((j + m).factorial().unwrap());
        radicand *= BigRational::from_integer((j - m).factorial().unwrap());
    }
    let mut denom = BigRational::from_integer(crate::numeric::factorial(l + 1).unwrap());
    for j in args.js() {
        denom *= BigRational::from_integer((total - j - j).factorial().unwrap());
    }
    SqrtRational::new(coeff, radicand / denom).unwrap()
}

/// Ground-truth 3j symbol from the multinomial expansion of the coupling
/// invariant. Invalid arguments give exact zero.
pub fn oracle_three_j(args: &ThreeJArgs) -> SqrtRational {
    if !args.is_nonzero_candidate() {
        return SqrtRational::zero();
    }
    match invariant_series(args.j1, args.j2, args.j3) {
        Some(inv) => oracle_read(&inv, args),
        None => SqrtRational::zero(),
    }
}

// ---------------------------------------------------------------------------
// Closed single-sum formulas
// ---------------------------------------------------------------------------

/// `sum_k (-1)^k / (k! (a-k)! (b-k)! (c-k)! (d+k)! (e+k)!)` over the k range
/// where every factorial argument is nonnegative. This is the regularized
/// reading of the terminating 3F2(;1) forms: a nonpositive-integer bottom
/// parameter only shifts the first nonvanishing term.
fn balanced_sum(a: i64, b: i64, c: i64, d: i64, e: i64) -> BigRational {
    let lo = 0.max(-d).max(-e);
    let hi = a.min(b).min(c);
    let mut sum = BigRational::zero();
    for k in lo..=hi {
        let mut den = crate::numeric::factorial_big(k as usize);
        den *= crate::numeric::factorial_big((a - k) as usize);
        den *= crate::numeric::factorial_big((b - k) as usize);
        den *= crate::numeric::factorial_big((c - k) as usize);
        den *= crate::numeric::factorial_big((d + k) as usize);
        den *= crate::numeric::factorial_big((e + k) as usize);
        let term = BigRational::new(num_bigint::BigInt::from(if k % 2 == 0 { 1 } else { -1 }), den);
        sum += term;
    }
    sum
}

/// Common square-root content of the closed 3j formulas:
/// `Delta(j1 j2 j3) * prod_i (j_i+m_i)! (j_i-m_i)!`.
fn three_j_radicand(args: &ThreeJArgs) -> BigRational {
    let total = args.j1 + args.j2 + args.j3;
    let l = total.as_integer().unwrap();
    let mut rad = BigRational::one();
    for j in args.js() {
        rad *= BigRational::from_integer((total - j - j).factorial().unwrap());
    }
    for (j, m) in [(args.j1, args.m1), (args.j2, args.m2), (args.j3, args.m3)] {
        rad *= BigRational::from_integer((j + m).factorial().unwrap());
        rad *= BigRational::from_integer((j - m).factorial().unwrap());
    }
    rad / BigRational::from_integer(crate::numeric::factorial(l + 1).unwrap())
}

/// 3j symbol by the corrected Van der Waerden closed form: a phase, the
/// triangle/projection square root, and the terminating series
/// `3F2(-(j2+m2), -(j1-m1), -(j1+j2-j3); j3-j1-m2+1, j3-j2+m1+1; 1)`
/// in regularized single-sum form.
pub fn three_j_vdw(args: &ThreeJArgs) -> SqrtRational {
    if !args.is_nonzero_candidate() {
        return SqrtRational::zero();
    }
    let a = (args.j1 + args.j2 - args.j3).as_integer().unwrap();
    let b = (args.j1 - args.m1).as_integer().unwrap();
    let c = (args.j2 + args.m2).as_integer().unwrap();
    let d = (args.j3 - args.j2 + args.m1).as_integer().unwrap();
    let e = (args.j3 - args.j1 - args.m2).as_integer().unwrap();
    let sum = balanced_sum(a, b, c, d, e);
    if sum.is_zero() {
        return SqrtRational::zero();
    }
    let phase = phase_of(args.j1 - args.j2 - args.m3);
    let pre = sum * rat_int(phase);
    SqrtRational::new(pre, three_j_radicand(args)).unwrap()
}

/// 3j symbol by the corrected Wigner closed form: the same square-root
/// content with the series reversed end-to-start, i.e.
/// `3F2(-(j2+m2), -(j3-m3), -(j2+j3-j1); j1-j3-m2+1, j1-j2+m3+1; 1)`
/// and the extra reversal phase `(-1)^(j2+m2)`.
pub fn three_j_wigner(args: &ThreeJArgs) -> SqrtRational {
    if !args.is_nonzero_candidate() {
        return SqrtRational::zero();
    }
    let a = (args.j2 + args.m2).as_integer().unwrap();
    let b = (args.j3 - args.m3).as_integer().unwrap();
    let c = (args.j2 + args.j3 - args.j1).as_integer().unwrap();
    let d = (args.j1 - args.j3 - args.m2).as_integer().unwrap();
    let e = (args.j1 - args.j2 + args.m3).as_integer().unwrap();
    let sum = balanced_sum(a, b, c, d, e);
    if sum.is_zero() {
        return SqrtRational::zero();
    }
    let phase = phase_of(args.j1 - args.j2 - args.m3 + args.j2 + args.m2);
    let pre = sum * rat_int(phase);
    SqrtRational::new(pre, three_j_radicand(args)).unwrap()
}

/// The stretched-projection special case
/// `3j(j1 j2 j3; j1, -j2, j2-j1) = (-1)^(2 j3) sqrt((2j1)! (2j2)! /
/// ((j1+j2+j3+1)! (j1+j2-j3)!))`; never zero when the triangle holds, which
/// makes it a safe divisor for the 6j contraction.
pub fn three_j_special(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> Result<SqrtRational> {
    if !triangle_ok(j1, j2, j3) || j1.is_negative() || j2.is_negative() || j3.is_negative() {
        return Err(Error::Domain(format!(
            "three_j_special requires a valid triangle, got ({j1}, {j2}, {j3})"
        )));
    }
    let total = (j1 + j2 + j3).as_integer().unwrap();
    let num = BigRational::from_integer((j1 + j1).factorial().unwrap())
        * BigRational::from_integer((j2 + j2).factorial().unwrap());
    let den = BigRational::from_integer(crate::numeric::factorial(total + 1).unwrap())
        * BigRational::from_integer((j1 + j2 - j3).factorial().unwrap());
    let sign = if j3.twice() % 2 == 0 { phase_of(j3 + j3) } else { -1 };
    SqrtRational::new(rat_int(sign), num / den)
}

// ---------------------------------------------------------------------------
// Canonical entry point with memoization
// ---------------------------------------------------------------------------

static THREE_J_CACHE: RwLock<Option<HashMap<[i64; 6], SqrtRational>>> = RwLock::new(None);

/// Maps `args` to its lexicographically smallest image under column
/// permutations and projection negation, returning the image and the phase
/// `value(args) = phase * value(image)`.
fn canonical_image(args: &ThreeJArgs) -> (ThreeJArgs, i64) {
    let total = args.j1 + args.j2 + args.j3;
    let odd_total = total.is_integer() && total.as_integer().unwrap() % 2 != 0;
    let j = args.js();
    let m = args.ms();
    let perms: [([usize; 3], bool); 6] = [
        ([0, 1, 2], true),
        ([1, 2, 0], true),
        ([2, 0, 1], true),
        ([1, 0, 2], false),
        ([0, 2, 1], false),
        ([2, 1, 0], false),
    ];
    let mut best: Option<([i64; 6], ThreeJArgs, i64)> = None;
    for (p, even) in perms {
        for negate in [false, true] {
            // odd column permutations and projection negation each
            // contribute (-1)^J; they cancel when combined
            let sign = if (even == !negate) || !odd_total { 1 } else { -1 };
            let flip = if negate { -1 } else { 1 };
            let cand = ThreeJArgs::new(
                [j[p[0]], j[p[1]], j[p[2]]],
                [
                    HalfInt::from_twice(flip * m[p[0]].twice()),
                    HalfInt::from_twice(flip * m[p[1]].twice()),
                    HalfInt::from_twice(flip * m[p[2]].twice()),
                ],
            );
            let key = cand.key();
            if best.as_ref().map_or(true, |(k, _, _)| key < *k) {
                best = Some((key, cand, sign));
            }
        }
    }
    let (_, image, sign) = best.unwrap();
    (image, sign)
}

/// Canonical 3j entry point: applies the selection rules (projection sum,
/// triangle, bounds, parity) for a fast exact zero, then dispatches.
/// `Auto` uses the Van der Waerden path with memoization keyed by the
/// symmetry-class representative.
pub fn three_j(args: &ThreeJArgs, method: ThreeJMethod) -> SqrtRational {
    if !args.is_nonzero_candidate() {
        return SqrtRational::zero();
    }
    // parity zero: all projections zero and odd total
    let total = args.j1 + args.j2 + args.j3;
    if args.m1.twice() == 0
        && args.m2.twice() == 0
        && args.m3.twice() == 0
        && total.as_integer().map_or(false, |t| t % 2 != 0)
    {
        return SqrtRational::zero();
    }
    match method {
        ThreeJMethod::Vdw => three_j_vdw(args),
        ThreeJMethod::Wigner => three_j_wigner(args),
        ThreeJMethod::Oracle => oracle_three_j(args),
        ThreeJMethod::Auto => {
            let (image, sign) = canonical_image(args);
            let key = image.key();
            {
                let guard = THREE_J_CACHE.read().unwrap();
                if let Some(map) = guard.as_ref() {
                    if let Some(v) = map.get(&key) {
                        return v.scale(&rat_int(sign));
                    }
                }
            }
            let value = three_j_vdw(&image);
            let mut guard = THREE_J_CACHE.write().unwrap();
            let map = guard.get_or_insert_with(HashMap::new);
            let stored = map.entry(key).or_insert(value);
            stored.scale(&rat_int(sign))
        }
    }
}

/// Clebsch-Gordan coefficient `<j1 m1 j2 m2 | j3 m3>` under the
/// Condon-Shortley convention:
/// `(-1)^(j1-j2+m3) sqrt(2 j3 + 1) * 3j(j1 j2 j3; m1 m2 -m3)`.
pub fn clebsch_gordan(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j3: HalfInt,
    m3: HalfInt,
) -> SqrtRational {
    let args = ThreeJArgs::new([j1, j2, j3], [m1, m2, -m3]);
    let w = three_j(&args, ThreeJMethod::Auto);
    if w.is_zero() {
        return w;
    }
    let phase = phase_of(j1 - j2 + m3);
    let factor = SqrtRational::new(rat_int(phase), rat_int(j3.twice() + 1)).unwrap();
    w.mul(&factor)
}

// ---------------------------------------------------------------------------
// Regge square and symmetries
// ---------------------------------------------------------------------------

/// The 3x3 Regge square of a 3j symbol; all row and column sums equal
/// `J = j1 + j2 + j3`, and all entries are nonnegative integers exactly when
/// the symbol passes the selection rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReggeSquare {
    pub entries: [[HalfInt; 3]; 3],
}

impl ReggeSquare {
    pub fn from_args(args: &ThreeJArgs) -> Result<Self> {
        let total = args.j1 + args.j2 + args.j3;
        if total.is_half_odd() {
            return Err(Error::Domain(format!(
                "Regge square requires integer j1+j2+j3, got {total}"
            )));
        }
        let j = args.js();
        let m = args.ms();
        let mut entries = [[HalfInt::ZERO; 3]; 3];
        for i in 0..3 {
            entries[0][i] = total - j[i] - j[i];
            entries[1][i] = j[i] - m[i];
            entries[2][i] = j[i] + m[i];
        }
        Ok(ReggeSquare { entries })
    }

    pub fn transpose(&self) -> Self {
        let mut t = *self;
        for r in 0..3 {
            for c in 0..3 {
                t.entries[r][c] = self.entries[c][r];
            }
        }
        t
    }

    pub fn permute_rows(&self, p: [usize; 3]) -> Self {
        ReggeSquare { entries: [self.entries[p[0]], self.entries[p[1]], self.entries[p[2]]] }
    }

    pub fn permute_cols(&self, p: [usize; 3]) -> Self {
        let mut t = *self;
        for r in 0..3 {
            for c in 0..3 {
                t.entries[r][c] = self.entries[r][p[c]];
            }
        }
        t
    }

    /// Reads 3j arguments back from the square: `j_i` is the mean of the two
    /// projection rows, `m_i` half their difference.
    pub fn to_args(&self) -> Result<ThreeJArgs> {
        let mut j = [HalfInt::ZERO; 3];
        let mut m = [HalfInt::ZERO; 3];
        for i in 0..3 {
            let sum = self.entries[1][i] + self.entries[2][i];
            let diff = self.entries[2][i] - self.entries[1][i];
            if sum.twice() % 2 != 0 || diff.twice() % 2 != 0 {
                return Err(Error::Domain("Regge image is not half-integral".into()));
            }
            j[i] = HalfInt::from_twice(sum.twice() / 2);
            m[i] = HalfInt::from_twice(diff.twice() / 2);
        }
        Ok(ThreeJArgs::new(j, m))
    }
}

/// The nontrivial Regge relabeling: realized on the Regge square as
/// transpose, then the row cycle (0 1 2) -> (2 0 1), then swapping the two
/// projection rows and the first two columns. The image is
/// `((j1+j2-m3)/2, (j1+j2+m3)/2, j3; (j1-j2+m1-m2)/2, (j1-j2-m1+m2)/2,
/// -j1+j2)`; the combined permutation parity is even, so the value is
/// preserved exactly (not merely in magnitude).
pub fn regge_map(args: &ThreeJArgs) -> Result<ThreeJArgs> {
    let sq = ReggeSquare::from_args(args)?;
    let image = sq
        .transpose()
        .permute_rows([2, 0, 1]) // rows of the image: (j-defining, lower, upper)
        .permute_cols([2, 1, 0])
        .permute_rows([0, 2, 1]); // swap projection rows
    image.to_args()
}

/// Classical symmetry operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryOp {
    Cyclic,
    Swap12,
    NegateM,
}

/// Applies a classical symmetry, returning the mapped arguments and the
/// phase such that `three_j(mapped) = phase * three_j(args)`.
pub fn classical_symmetry(args: &ThreeJArgs, op: SymmetryOp) -> (ThreeJArgs, i64) {
    let total = args.j1 + args.j2 + args.j3;
    let odd_total = total.is_integer() && total.as_integer().unwrap() % 2 != 0;
    let sign = if odd_total { -1 } else { 1 };
    match op {
        SymmetryOp::Cyclic => (
            ThreeJArgs::new([args.j2, args.j3, args.j1], [args.m2, args.m3, args.m1]),
            1,
        ),
        SymmetryOp::Swap12 => (
            ThreeJArgs::new([args.j2, args.j1, args.j3], [args.m2, args.m1, args.m3]),
            sign,
        ),
        SymmetryOp::NegateM => (
            ThreeJArgs::new(args.js(), [-args.m1, -args.m2, -args.m3]),
            sign,
        ),
    }
}

// ---------------------------------------------------------------------------
// 6j symbols
// ---------------------------------------------------------------------------

/// 6j symbol via the reduced single-sum contraction: the stretched
/// projection row `(j1, -j2, j2-j1)` collapses two of the three projection
/// sums, leaving one free summation index; the result is divided by the
/// (never zero) stretched 3j. Any triad failing the triangle rule gives
/// exact zero.
pub fn six_j(args: &SixJArgs) -> SqrtRational {
    for t in args.triads() {
        if !triangle_ok(t[0], t[1], t[2]) || t[0].is_negative() {
            return SqrtRational::zero();
        }
    }
    let SixJArgs { j1, j2, j3, l1, l2, l3 } = *args;
    let m3 = j2 - j1;
    let mut sum = SqrtRational::zero();
    let mut tm3 = -l3.twice();
    while tm3 <= l3.twice() {
        let mu3 = HalfInt::from_twice(tm3);
        tm3 += 2;
        let mu1 = mu3 - j2;
        let mu2 = mu3 - j1;
        let t1 = three_j(&ThreeJArgs::new([j1, l2, l3], [j1, mu2, -mu3]), ThreeJMethod::Auto);
        if t1.is_zero() {
            continue;
        }
        let t2 = three_j(&ThreeJArgs::new([l1, j2, l3], [-mu1, -j2, mu3]), ThreeJMethod::Auto);
        if t2.is_zero() {
            continue;
        }
        let t3 = three_j(&ThreeJArgs::new([l1, l2, j3], [mu1, -mu2, m3]), ThreeJMethod::Auto);
        if t3.is_zero() {
            continue;
        }
        let phase = phase_of(l1 + l2 + l3 + mu1 + mu2 + mu3);
        let term = t1.mul(&t2).mul(&t3).scale(&rat_int(phase));
        sum = sum.add(&term).expect("contraction terms share the radicand");
    }
    let divisor = three_j_special(j1, j2, j3).expect("triangle already checked");
    sum.div(&divisor).unwrap()
}

/// Slow independent 6j oracle: the full triple projection sum contracted
/// against the stretched 3j of the `(j1 j2 j3)` triad. Every inner 3j comes
/// from the generating-function oracle, so this path shares nothing with the
/// closed formulas or with [`six_j`]'s reduced contraction.
pub fn six_j_triple_sum(args: &SixJArgs) -> SqrtRational {
    for t in args.triads() {
        if !triangle_ok(t[0], t[1], t[2]) || t[0].is_negative() {
            return SqrtRational::zero();
        }
    }
    let SixJArgs { j1, j2, j3, l1, l2, l3 } = *args;
    let (m1, m2, m3) = (j1, -j2, j2 - j1);
    let mut sum = SqrtRational::zero();
    let mut tu1 = -l1.twice();
    while tu1 <= l1.twice() {
        let mu1 = HalfInt::from_twice(tu1);
        tu1 += 2;
        let mut tu2 = -l2.twice();
        while tu2 <= l2.twice() {
            let mu2 = HalfInt::from_twice(tu2);
            tu2 += 2;
            let mut tu3 = -l3.twice();
            while tu3 <= l3.twice() {
                let mu3 = HalfInt::from_twice(tu3);
                tu3 += 2;
                let t1 = oracle_three_j(&ThreeJArgs::new([j1, l2, l3], [m1, mu2, -mu3]));
                if t1.is_zero() {
                    continue;
                }
                let t2 = oracle_three_j(&ThreeJArgs::new([l1, j2, l3], [-mu1, m2, mu3]));
                if t2.is_zero() {
                    continue;
                }
                let t3 = oracle_three_j(&ThreeJArgs::new([l1, l2, j3], [mu1, -mu2, m3]));
                if t3.is_zero() {
                    continue;
                }
                let phase = phase_of(l1 + l2 + l3 + mu1 + mu2 + mu3);
                let term = t1.mul(&t2).mul(&t3).scale(&rat_int(phase));
                sum = sum.add(&term).expect("triple-sum terms share the radicand");
            }
        }
    }
    let divisor = oracle_three_j(&ThreeJArgs::new([j1, j2, j3], [m1, m2, m3]));
    sum.div(&divisor).unwrap()
}

// ---------------------------------------------------------------------------
// Orthogonality
// ---------------------------------------------------------------------------

/// `sum_{m1,m2} (2 j3 + 1) * 3j(j1 j2 j3; m1 m2 m3) * 3j(j1 j2 j3'; m1 m2 m3')`,
/// exactly. Equals 1 on the diagonal (valid `(j3, m3) = (j3', m3')`) and 0
/// otherwise; the products reduce to a common radicand so the sum is
/// rational.
pub fn orthogonality_sum(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    j3p: HalfInt,
    m3: HalfInt,
    m3p: HalfInt,
) -> BigRational {
    let mut sum = SqrtRational::zero();
    let mut tm1 = -j1.twice();
    while tm1 <= j1.twice() {
        let m1 = HalfInt::from_twice(tm1);
        tm1 += 2;
        let m2 = -m1 - m3;
        if m2.abs() > j2 || (j2 + m2).is_half_odd() {
            continue;
        }
        let a = three_j(&ThreeJArgs::new([j1, j2, j3], [m1, m2, m3]), ThreeJMethod::Auto);
        if a.is_zero() {
            continue;
        }
        let b = three_j(&ThreeJArgs::new([j1, j2, j3p], [m1, m2, m3p]), ThreeJMethod::Auto);
        if b.is_zero() {
            continue;
        }
        sum = sum.add(&a.mul(&b)).expect("orthogonality terms share the radicand");
    }
    let scaled = sum.scale(&rat_int(j3.twice() + 1));
    if scaled.is_zero() {
        return BigRational::zero();
    }
    assert!(
        scaled.radicand().is_one(),
        "orthogonality sum must be rational, got {scaled}"
    );
    scaled.prefactor().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use std::ops::Neg;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn args(tj: [i64; 3], tm: [i64; 3]) -> ThreeJArgs {
        ThreeJArgs::new(
            [h(tj[0]), h(tj[1]), h(tj[2])],
            [h(tm[0]), h(tm[1]), h(tm[2])],
        )
    }

    fn sqrt_rat(p: (i64, i64), r: (i64, i64)) -> SqrtRational {
        SqrtRational::new(rat(p.0, p.1), rat(r.0, r.1)).unwrap()
    }

    #[test]
    fn triangle_rule() {
        assert!(triangle_ok(h(1), h(1), h(2)));
        assert!(!triangle_ok(h(1), h(1), h(1))); // J not integer
        assert!(!triangle_ok(h(6), h(2), h(2))); // triangle violated
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_three_j(&args([0, 0, 0], [0, 0, 0])), SqrtRational::one());
        // hand multinomial expansion: coefficient of xi1 xi2 eta3^2 / sqrt(2)
        assert_eq!(
            oracle_three_j(&args([1, 1, 2], [1, 1, -2])),
            sqrt_rat((-1, 1), (1, 3))
        );
        // parity zero: J = 3 odd with all projections zero
        assert!(oracle_three_j(&args([2, 2, 2], [0, 0, 0])).is_zero());
        // selection-rule zero
        assert!(oracle_three_j(&args([2, 2, 2], [2, 2, 2])).is_zero());
    }

    #[test]
    fn vdw_examples() {
        assert_eq!(three_j_vdw(&args([2, 2, 0], [0, 0, 0])), sqrt_rat((-1, 1), (1, 3)));
        assert_eq!(three_j_vdw(&args([1, 1, 2], [1, 1, -2])), sqrt_rat((-1, 1), (1, 3)));
        assert_eq!(three_j_vdw(&args([2, 2, 4], [2, 2, -4])), sqrt_rat((1, 1), (1, 5)));
    }

    #[test]
    fn wigner_examples() {
        assert_eq!(three_j_wigner(&args([2, 2, 0], [0, 0, 0])), sqrt_rat((-1, 1), (1, 3)));
        assert_eq!(three_j_wigner(&args([1, 1, 2], [1, 1, -2])), sqrt_rat((-1, 1), (1, 3)));
        assert_eq!(three_j_wigner(&args([2, 2, 4], [2, 2, -4])), sqrt_rat((1, 1), (1, 5)));
    }

    #[test]
    fn formulas_match_oracle_on_awkward_projections() {
        // cases where the naive 3F2 bottom parameters go nonpositive
        for (tj, tm) in [
            ([4, 4, 0], [0, 0, 0]),
            ([4, 4, 0], [2, -2, 0]),
            ([3, 3, 0], [1, -1, 0]),
            ([4, 2, 2], [0, 2, -2]),
            ([5, 3, 2], [-3, 1, 2]),
        ] {
            let a = args(tj, tm);
            let expect = oracle_three_j(&a);
            assert_eq!(three_j_vdw(&a), expect, "vdw at {a:?}");
            assert_eq!(three_j_wigner(&a), expect, "wigner at {a:?}");
        }
    }

    #[test]
    fn special_case_examples() {
        assert_eq!(three_j_special(h(0), h(0), h(0)).unwrap(), SqrtRational::one());
        assert_eq!(
            three_j_special(h(1), h(1), h(2)).unwrap(),
            sqrt_rat((1, 1), (1, 6))
        );
        assert_eq!(
            three_j_special(h(2), h(2), h(2)).unwrap(),
            sqrt_rat((1, 1), (1, 6))
        );
        // matches the oracle at the stretched projections
        assert_eq!(
            three_j_special(h(1), h(1), h(2)).unwrap(),
            oracle_three_j(&args([1, 1, 2], [1, -1, 0]))
        );
        assert!(three_j_special(h(4), h(0), h(2)).is_err());
    }

    #[test]
    fn entry_point_selection_rules() {
        assert!(three_j(&args([2, 2, 2], [2, 2, 2]), ThreeJMethod::Auto).is_zero());
        assert_eq!(
            three_j(&args([2, 2, 4], [0, 0, 0]), ThreeJMethod::Auto),
            sqrt_rat((1, 1), (2, 15))
        );
        assert_eq!(three_j(&args([0, 0, 0], [0, 0, 0]), ThreeJMethod::Auto), SqrtRational::one());
        // cache path returns consistent values under symmetry images
        let x = three_j(&args([2, 4, 6], [2, -4, 2]), ThreeJMethod::Auto);
        let y = three_j(&args([4, 2, 6], [-4, 2, 2]), ThreeJMethod::Auto);
        let j_sum = 1 + 2 + 3;
        let expect = if j_sum % 2 == 0 { x.clone() } else { x.clone().neg() };
        assert_eq!(y, expect);
    }

    #[test]
    fn regge_square_shape() {
        let a = args([1, 1, 2], [1, 1, -2]);
        let sq = ReggeSquare::from_args(&a).unwrap();
        let total = h(4);
        for i in 0..3 {
            let row_sum = sq.entries[i][0] + sq.entries[i][1] + sq.entries[i][2];
            let col_sum = sq.entries[0][i] + sq.entries[1][i] + sq.entries[2][i];
            assert_eq!(row_sum, total);
            assert_eq!(col_sum, total);
        }
        assert_eq!(sq.to_args().unwrap(), a);
    }

    #[test]
    fn regge_map_examples() {
        // fixed point
        let a = args([2, 2, 4], [0, 0, 0]);
        assert_eq!(regge_map(&a).unwrap(), a);
        // (1/2,1/2,1) image is (1,0,1; 0,0,0)
        let b = args([1, 1, 2], [1, 1, -2]);
        let img = regge_map(&b).unwrap();
        assert_eq!(img, args([2, 0, 2], [0, 0, 0]));
        assert_eq!(
            oracle_three_j(&img).abs(),
            oracle_three_j(&b).abs()
        );
        // J = 0 fixed point
        let c = args([0, 0, 0], [0, 0, 0]);
        assert_eq!(regge_map(&c).unwrap(), c);
    }

    #[test]
    fn regge_map_preserves_value_exactly() {
        // discovered sign rule: the composite square operation has even
        // parity, so the value (not just |value|) is preserved
        for (tj, tm) in [
            ([1, 1, 2], [1, 1, -2]),
            ([2, 2, 4], [2, 2, -4]),
            ([2, 4, 6], [2, -4, 2]),
            ([3, 3, 4], [1, 1, -2]),
            ([5, 3, 2], [-3, 1, 2]),
        ] {
            let a = args(tj, tm);
            let img = regge_map(&a).unwrap();
            assert_eq!(oracle_three_j(&img), oracle_three_j(&a), "at {a:?}");
        }
    }

    #[test]
    fn classical_symmetry_phases() {
        let a = args([1, 1, 2], [1, 1, -2]);
        let (img, phase) = classical_symmetry(&a, SymmetryOp::Cyclic);
        assert_eq!(
            oracle_three_j(&img),
            oracle_three_j(&a).scale(&rat_int(phase))
        );
        let (img, phase) = classical_symmetry(&a, SymmetryOp::Swap12);
        assert_eq!(phase, 1); // J = 2 even
        assert_eq!(oracle_three_j(&img), oracle_three_j(&a));
        let b = args([2, 2, 4], [2, -2, 0]);
        let (img, phase) = classical_symmetry(&b, SymmetryOp::NegateM);
        assert_eq!(phase, 1); // J = 4
        assert_eq!(oracle_three_j(&img), oracle_three_j(&b));
    }

    #[test]
    fn six_j_examples() {
        // {1 1 1; 0 1 1} = -1/3 via the zero-argument reduction
        let v = six_j(&SixJArgs::new([h(2), h(2), h(2)], [h(0), h(2), h(2)]));
        assert_eq!(v, SqrtRational::from_rational(rat(-1, 3)));
        // full triple-sum oracle agrees
        let w = six_j_triple_sum(&SixJArgs::new([h(2), h(2), h(2)], [h(2), h(2), h(2)]));
        let v = six_j(&SixJArgs::new([h(2), h(2), h(2)], [h(2), h(2), h(2)]));
        assert_eq!(v, w);
        // triad failure
        assert!(six_j(&SixJArgs::new([h(4), h(0), h(2)], [h(0), h(2), h(2)])).is_zero());
    }

    #[test]
    fn six_j_half_integer_case() {
        // {1/2 1/2 1; 1/2 1/2 1} = 1/6 (standard value)
        let v = six_j(&SixJArgs::new([h(1), h(1), h(2)], [h(1), h(1), h(2)]));
        assert_eq!(v, SqrtRational::from_rational(rat(1, 6)));
    }

    #[test]
    fn orthogonality_examples() {
        assert_eq!(
            orthogonality_sum(h(1), h(1), h(2), h(2), h(0), h(0)),
            rat_int(1)
        );
        assert_eq!(
            orthogonality_sum(h(1), h(1), h(2), h(0), h(0), h(0)),
            rat_int(0)
        );
        assert_eq!(
            orthogonality_sum(h(0), h(0), h(0), h(0), h(0), h(0)),
            rat_int(1)
        );
    }

    #[test]
    fn clebsch_gordan_stretched() {
        // <1/2 1/2 1/2 1/2 | 1 1> = 1
        assert_eq!(
            clebsch_gordan(h(1), h(1), h(1), h(1), h(2), h(2)),
            SqrtRational::one()
        );
    }
}

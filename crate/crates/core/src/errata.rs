//! Registry of source-formula corrections.
//!
//! Every closed formula implemented "as printed" that had to be corrected to
//! agree with its oracle is recorded here, mirrored in `docs/errata.md`, and
//! where practical backed by an executable witness: a function that
//! evaluates the printed form so the verification suite can demonstrate the
//! disagreement (and the corrected path's agreement). A formula path that
//! disagrees with its oracle without a registry entry fails the `errata`
//! suite.

use crate::numeric::{rat_int, BigRational, HalfInt, SqrtRational};
use crate::su2::ThreeJArgs;

/// One corrected equation.
#[derive(Clone, Copy, Debug)]
pub struct Erratum {
    /// Source equation tag, e.g. `"6.9"`.
    pub equation: &'static str,
    /// What the source prints.
    pub printed: &'static str,
    /// What the implementation uses.
    pub corrected: &'static str,
    /// The sweep or check that forced the correction.
    pub forced_by: &'static str,
}

pub const ERRATA: &[Erratum] = &[
    Erratum {
        equation: "6.6",
        printed: "invariant denominator sqrt((L+1)!(L-2l1)!(L-2l2)!(L-2l3)) drops the factorial mark on the last factor",
        corrected: "(L-2l3)! - all four factors are factorials",
        forced_by: "orthogonality_sum contract and the three-path equivalence sweep (j <= 7/2)",
    },
    Erratum {
        equation: "6.9",
        printed: "phase (-1)^(2(l2-l1)); Delta(l,m) carries (l1-m1)!/(l1+m1)!; third 3F2 numerator parameter repeats l-l1-m2",
        corrected: "phase (-1)^(j1-j2-m3+j2+m2) outside Delta's (-1)^(l2+m2); Delta carries (l1+m1)!/(l1-m1)!; third numerator parameter -(l1+l2-l); bottom parameters read in the regularized sense",
        forced_by: "exhaustive equality with the invariant-expansion oracle, j_i <= 7/2",
    },
    Erratum {
        equation: "7.6",
        printed: "normalization denominator (j1+j2+j3+1)!(j1+j2+j3)!",
        corrected: "(j1+j2+j3+1)!(j1+j2-j3)!; the printed phase (-1)^(2j2-2j1) equals the derived (-1)^(2j3) on the triangle domain",
        forced_by: "stretched-projection slice of the oracle sweep",
    },
    Erratum {
        equation: "7.7",
        printed: "trig exponents 2(j2-m2)+1 and 2(j1-m1)+1 with prefactor Gamma3/(Gamma2 Gamma1 sqrt((J-2j2)!(J-2j1)!))",
        corrected: "exponents j1+m1+j2-m2+1 and j1-m1+j2+m2+1; prefactor (-1)^(j1-m1) sqrt(C(2j1, j1-m1) C(2j2, j2-m2))/2 divided by the stretched 3j, from the little-d product route",
        forced_by: "quadrature sweep against the exact 3j, j_i <= 2 at order 64",
    },
    Erratum {
        equation: "7.8",
        printed: "(-1)^beta Gamma(n+alpha+1)/(n! Gamma(1+alpha)) 2F1(n+alpha+beta+1, -n; 1+beta; cos^2(theta/2))",
        corrected: "(-1)^n Gamma(n+beta+1)/(n! Gamma(1+beta)) 2F1(...) - endpoint-reflection form",
        forced_by: "equality of the two hypergeometric Jacobi forms, n <= 8, alpha, beta <= 4",
    },
    Erratum {
        equation: "7.12",
        printed: "3F2(-j3+m3, -j3+j1-j2, j1-m1-1; j1-j2+m3+1, -j3-j2-m1; 1) with ratio (j1+j2+m1)!/(j1-j2+m3)!",
        corrected: "the end-to-start reversal of the Van der Waerden series: 3F2(-(j2+m2), -(j3-m3), -(j2+j3-j1); j1-j3-m2+1, j1-j2+m3+1; 1) with phase (-1)^(j1-j2-m3+j2+m2) and the common square-root content",
        forced_by: "exhaustive equality with the invariant-expansion oracle, j_i <= 7/2",
    },
    Erratum {
        equation: "7.16",
        printed: "bottom row ((j1-j2+m1-m2)/2, (j1-j2+m1-m2)/2, -j1+j2) repeats its first entry and does not sum to zero",
        corrected: "second entry (j1-j2-m1+m2)/2; realized as transpose + row cycle + column swap + projection-row swap of the Regge square (even combined parity), so the value is preserved exactly, sign rule +1",
        forced_by: "Regge sweep j_i <= 3 against the oracle",
    },
    Erratum {
        equation: "8.6",
        printed: "phase (-1)^(l1+l2-j1-j2), prefactor sqrt((j1+j2+j3+1)!(j1+j2-j3)!(2l1)!(2l2)!/(Delta(j1,l2,l3) Delta(j2,l1,l3))), tan power j1+j2",
        corrected: "phase (-1)^(j1+l2+l3), triad ratios sqrt((2j1)!/((L1+1)! A1! A2! A3!)) sqrt((2j2)!/((L2+1)! B1! B2! B3!)) sqrt((2l1)!(2l2)!) with the resummation factor (2l3)!, tan power j1+j2-2l3, divided by the stretched 3j of (j1 j2 j3) and (l1 l2 j3)",
        forced_by: "6j integral-representation sweep against the exact contraction, entries <= 2 at order 96",
    },
    Erratum {
        equation: "5.9",
        printed: "D^l_(m,0) = sqrt(4/(2l+1)) Y_lm",
        corrected: "sqrt(4 pi/(2l+1)) Y_lm",
        forced_by: "Y_00 normalization and the spherical generating-function coefficient check",
    },
    Erratum {
        equation: "5.15",
        printed: "1/(1 - 2 r cos(theta/2) cos(phi+psi) + r^2)",
        corrected: "1/(1 - 2 r cos(theta/2) cos((phi+psi)/2) + r^2)",
        forced_by: "direct character trace sum_m d^j_mm(theta) e^(-i m (phi+psi)) at (theta, phi+psi) = (pi/2, pi/3)",
    },
    Erratum {
        equation: "5.17",
        printed: "1/(1 - 2 alpha x - alpha^2 r^2)^m at r^2 = 1",
        corrected: "1/(1 - 2 alpha x + alpha^2)^m - the n = 2 reduction carries the classical quadratic",
        forced_by: "degree-8 comparison with the Gegenbauer recurrence",
    },
    Erratum {
        equation: "6.5",
        printed: "integral of Y1 Y2 Y3 = prod_i sqrt((2 l_i + 1)/(4 pi)) * 3j(0,0,0) * 3j(m)",
        corrected: "sqrt(prod_i (2 l_i + 1) / (4 pi)) * 3j(0,0,0) * 3j(m) - a single power of 4 pi",
        forced_by: "sphere quadrature at l = (1,1,2) with the measure pinned by the l = 0 case",
    },
    Erratum {
        equation: "9.9",
        printed: "norm denominator contains (2t+1)! lambda!",
        corrected: "(2t+1) (no factorial) and no lambda! factor",
        forced_by: "Bargmann-measure overlap kernel norms, all states with lambda, mu <= 3",
    },
    Erratum {
        equation: "9.16",
        printed: "leading numerator factor '2 mu3!' (ambiguous binding)",
        corrected: "2 * (mu3!), not (2 mu3)!",
        forced_by: "unit-norm sum over state triples per coupling, lambda <= 3 (the trivial coupling alone rules out (2 mu3)!)",
    },
    Erratum {
        equation: "9.25",
        printed: "undefined symbol T; SU(2) factor written (T1 T2 T3; (t1)0 (t2)0 (t3)0); norm N[(lambda3 mu3), (alpha3)]",
        corrected: "T = t1 + t2 + t3; the SU(2) factor is the bare 3j(t1 t2 t3; t01, t02, -t03) after absorbing (-1)^(r3) into the symbol's convention; the third norm is the conjugate-irrep norm N[(mu3 lambda3), (alpha3 conjugated)]; per-coupling sign fixed by the first nonzero value in state order",
        forced_by: "exact equality with the generating-function oracle on all couplings lambda1, lambda2 <= 3",
    },
    Erratum {
        equation: "4.1",
        printed: "prefactor (m omega/(pi hbar))^(1/2) placed outside the spectral sum",
        corrected: "the measure factor enters once per wavefunction pair, u_n(x) u_n(x') = sqrt(m omega/hbar) u_n(q) u_n(q'), fixed against the closed form",
        forced_by: "|K|^2 constancy and the regularized spectral comparison",
    },
];

/// Looks up an erratum by tag.
pub fn find(equation: &str) -> Option<&'static Erratum> {
    ERRATA.iter().find(|e| e.equation == equation)
}

// ---------------------------------------------------------------------------
// Executable witnesses: printed forms, evaluated literally
// ---------------------------------------------------------------------------

/// Eq 6.6 as printed: the last denominator factor enters without its
/// factorial mark.
pub fn printed_6_6_oracle(args: &ThreeJArgs) -> SqrtRational {
    let v = crate::su2::oracle_three_j(args);
    if v.is_zero() {
        return v;
    }
    let a3 = (args.j1 + args.j2 - args.j3).as_integer().unwrap();
    // corrected carries 1/sqrt(a3!); printed carries 1/sqrt(a3)
    let fix = BigRational::new(
        crate::numeric::factorial_big(a3 as usize),
        num_bigint::BigInt::from(a3.max(1)),
    );
    v.mul(&SqrtRational::sqrt_of(fix).unwrap())
}

/// Eq 6.9 as printed: phase `(-1)^(2(l2-l1))`, `Delta(l,m)` with the
/// `(l1-m1)!/(l1+m1)!` placement, and the third series parameter duplicating
/// `l - l1 - m2`.
pub fn printed_6_9(args: &ThreeJArgs) -> Option<SqrtRational> {
    let ThreeJArgs { j1, j2, j3, m1, m2, m3 } = *args;
    if !args.is_nonzero_candidate() {
        return Some(SqrtRational::zero());
    }
    let fact = |h: HalfInt| -> Option<BigRational> {
        let n = h.as_integer().ok()?;
        if n < 0 {
            return None;
        }
        Some(BigRational::from_integer(crate::numeric::factorial_big(n as usize)))
    };
    // Delta(l, m) as printed
    let num = fact(j3 + j1 - j2)? * fact(j1 + j2 - j3)? * fact(j3 + m3)? * fact(j1 - m1)?;
    let den = fact(j3 - j1 + j2)?
        * BigRational::from_integer(crate::numeric::factorial_big(
            (j1 + j2 + j3).as_integer().ok()? as usize + 1,
        ))
        * fact(j3 - m3)?
        * fact(j1 + m1)?
        * fact(j2 + m2)?
        * fact(j2 - m2)?;
    let delta_rad = num / den;
    // (-1)^(2(l2-l1)): the exponent is the twice-value of j2 - j1
    let phase = if (j2 - j1).twice() % 2 == 0 { 1 } else { -1 };
    let sign2 = (j2 + m2).parity().ok()?;
    let ratio = fact(j3 - j1 + j2)? * fact(j3 - m3)? * fact(j2 - m2)?
        / (fact(j1 + j2 - j3)? * fact(j3 - j2 + m1)? * fact(j3 - j1 - m2)?);
    let f = crate::hypergeometric::hyp3f2_unit(
        &-(rat_int((j2 + m2).as_integer().ok()?)),
        &-(rat_int((j1 - m1).as_integer().ok()?)),
        &rat_int((j3 - j1 - m2).as_integer().ok()?),
        &rat_int((j3 - j1 - m2).as_integer().ok()? + 1),
        &rat_int((j3 - j2 + m1).as_integer().ok()? + 1),
    )
    .ok()?;
    let pre = ratio * f * rat_int(phase * sign2);
    Some(SqrtRational::new(pre, delta_rad).ok()?)
}

/// Eq 7.6 as printed: `(j1+j2+j3)!` in the denominator.
pub fn printed_7_6(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> Option<SqrtRational> {
    if !crate::su2::triangle_ok(j1, j2, j3) {
        return None;
    }
    let total = (j1 + j2 + j3).as_integer().ok()?;
    let num = BigRational::from_integer(
        (j1 + j1).factorial().ok()? * (j2 + j2).factorial().ok()?,
    );
    let den = BigRational::from_integer(
        crate::numeric::factorial_big(total as usize + 1)
            * crate::numeric::factorial_big(total as usize),
    );
    let sign = if (j2 - j1).twice() % 2 == 0 { 1 } else { -1 };
    Some(SqrtRational::new(rat_int(sign), num / den).ok()?)
}

/// Eq 7.16 as printed: the bottom-row projection sum, which should vanish
/// for any 3j relabeling but does not.
pub fn printed_7_16_projection_sum(args: &ThreeJArgs) -> HalfInt {
    let ThreeJArgs { j1, j2, m1, m2, .. } = *args;
    // (j1-j2+m1-m2)/2 twice + (-j1+j2)
    let entry = HalfInt::from_twice((j1 - j2 + m1 - m2).twice() / 2);
    entry + entry + (j2 - j1)
}

/// Eq 5.15 as printed: the character generating function with the full angle
/// in the second cosine. Returns (printed, corrected, direct trace) for the
/// Chebyshev coefficient at level `2j`.
pub fn character_5_15_comparison(theta: f64, omega: f64, twice_j: u32) -> (f64, f64, f64) {
    let cheb = |c: f64| {
        let mut prev = 1.0;
        let mut cur = 2.0 * c;
        match twice_j {
            0 => 1.0,
            1 => cur,
            _ => {
                for _ in 2..=twice_j {
                    let next = 2.0 * c * cur - prev;
                    prev = cur;
                    cur = next;
                }
                cur
            }
        }
    };
    let printed = cheb((theta / 2.0).cos() * omega.cos());
    let corrected = cheb((theta / 2.0).cos() * (omega / 2.0).cos());
    let j = HalfInt::from_twice(twice_j as i64);
    let mut trace = 0.0;
    let mut tm = -j.twice();
    while tm <= j.twice() {
        let m = HalfInt::from_twice(tm);
        trace += crate::special::wigner_little_d(j, m, m, theta).unwrap()
            * (m.to_f64() * omega).cos();
        tm += 2;
    }
    (printed, corrected, trace)
}

/// Eq 9.9 as printed: the norm with `(2t+1)! lambda!` in the denominator.
pub fn printed_9_9(
    irrep: &crate::su3::Su3Irrep,
    state: &crate::su3::Su3State,
) -> Option<SqrtRational> {
    let (lam, mu) = (irrep.lambda as i64, irrep.mu as i64);
    let (p, q) = (state.p as i64, state.q as i64);
    let twice_t = state.twice_t(irrep);
    let t = state.t(irrep);
    let t0 = state.t0(irrep);
    let fact = |n: i64| -> Option<num_bigint::BigInt> {
        if n < 0 {
            None
        } else {
            Some(crate::numeric::factorial_big(n as usize))
        }
    };
    let num = fact(mu + p + 1)? * fact(mu + lam - q + 1)?;
    let den = fact(lam + 1)?
        * fact(twice_t + 1)?
        * fact(lam)?
        * fact(p)?
        * fact(lam - p)?
        * fact(q)?
        * fact(mu - q)?
        * (t + t0).factorial().ok()?
        * (t - t0).factorial().ok()?;
    let sign = if q % 2 == 0 { 1 } else { -1 };
    SqrtRational::new(rat_int(sign), BigRational::new(num, den)).ok()
}

/// Eq 9.16 with the `(2 mu3)!` binding.
pub fn printed_9_16_alt_binding(c: &crate::su3::Su3Coupling) -> SqrtRational {
    let fact = crate::numeric::factorial_big;
    let num = fact(2 * c.k1 as usize) * fact(c.k2 as usize) * fact(c.k3 as usize);
    let s = (c.lambda1 + c.lambda2 - c.target.mu) as usize;
    let den = fact(s + 2) * fact(s + 1);
    SqrtRational::sqrt_of(BigRational::new(num, den)).unwrap()
}

/// Eq 6.5 as printed: three powers of `1/sqrt(4 pi)`.
pub fn printed_6_5_constant(l: [u32; 3]) -> f64 {
    l.iter()
        .map(|&li| ((2 * li + 1) as f64 / (4.0 * std::f64::consts::PI)).sqrt())
        .product()
}

/// Eq 5.9 as printed: the spherical-harmonic relation without pi.
pub fn printed_5_9_y00() -> f64 {
    // D^0_(0,0) = 1 = sqrt(4/(2*0+1)) * Y_00 would give Y_00 = 1/2
    0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_unique_and_covers_candidates() {
        let mut tags: Vec<&str> = ERRATA.iter().map(|e| e.equation).collect();
        let n = tags.len();
        tags.sort();
        tags.dedup();
        assert_eq!(tags.len(), n, "duplicate errata tags");
        for candidate in ["6.6", "7.6", "7.7", "7.12", "7.16", "5.9", "5.15", "9.16", "9.25"] {
            assert!(find(candidate).is_some(), "missing candidate {candidate}");
        }
    }

    #[test]
    fn printed_6_9_disagrees_somewhere_and_agrees_nowhere_required() {
        // the ledger entry is justified by a concrete disagreement with the
        // oracle; many symmetric points coincide by accident, so scan
        let h = HalfInt::from_twice;
        let mut evaluated = 0;
        let mut disagreements = 0;
        for tj1 in 0..=4i64 {
            for tj2 in 0..=4i64 {
                for tj3 in 0..=4i64 {
                    for tm1 in (-tj1..=tj1).step_by(2) {
                        for tm2 in (-tj2..=tj2).step_by(2) {
                            let tm3 = -tm1 - tm2;
                            if tm3.abs() > tj3 {
                                continue;
                            }
                            let args = ThreeJArgs::new(
                                [h(tj1), h(tj2), h(tj3)],
                                [h(tm1), h(tm2), h(tm3)],
                            );
                            if !args.is_nonzero_candidate() {
                                continue;
                            }
                            if let Some(printed) = printed_6_9(&args) {
                                evaluated += 1;
                                if printed != crate::su2::oracle_three_j(&args) {
                                    disagreements += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(evaluated > 100, "witness evaluated too few cases");
        assert!(disagreements > 0, "printed 6.9 never disagreed; erratum unjustified");
    }
}

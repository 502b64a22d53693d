//! Exact coupling coefficients for SU(2) and multiplicity-free SU(3).
//!
//! The crate is organised around a small set of exact-arithmetic building
//! blocks and a collection of mutually independent evaluation routes for the
//! same objects:
//!
//! - [`numeric`]: half-integers, big rationals, signed square roots of
//!   rationals and cached factorials.
//! - [`hypergeometric`]: terminating hypergeometric series over exact
//!   rationals, series reversal and the Euler transformation.
//! - [`series`]: truncated multivariate power series with exact rational
//!   coefficients; the engine behind every generating-function oracle.
//! - [`su2`]: Wigner 3j/6j symbols. The invariant-expansion oracle is ground
//!   truth; the closed formulas are calibrated against it (see
//!   `docs/errata.md` at the repository root).
//! - [`special`]: classical orthogonal polynomials, Wigner little-d matrices,
//!   spherical harmonics and generating-function coefficient checks.
//! - [`kernels`]: harmonic-oscillator delta-kernel and Feynman-propagator
//!   verification (closed form vs regularized spectral sum).
//! - [`quadrature`]: Gauss-Legendre rules and integral representations of the
//!   3j/6j symbols and Gaunt integrals, cross-checked against the exact path.
//! - [`su3`]: multiplicity-free SU(3) couplings (λ1,0)⊗(λ2,0), their 3j
//!   symbols and isoscalar factors, with a generating-function oracle.
//! - [`verify`]: the executable verification suites used both by tests and by
//!   the command-line front end.

pub mod errata;
pub mod hypergeometric;
pub mod kernels;
pub mod numeric;
pub mod quadrature;
pub mod series;
pub mod special;
pub mod su2;
pub mod su3;
pub mod verify;

pub use numeric::{BigRational, HalfInt, SqrtRational};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("incompatible radicands: cannot add sqrt({0}) and sqrt({1}) exactly")]
    IncompatibleRadicands(String, String),
    #[error("series variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("exponent tuple out of range: {0}")]
    ExponentRange(String),
    #[error("degree budget exceeded: {0}")]
    DegreeBudget(String),
    #[error("denominator parameter {param} hits a pole at term {index}")]
    Pole { param: String, index: usize },
    #[error("caustic: sin(alpha) vanishes (alpha = {0})")]
    Caustic(f64),
    #[error("unsupported coupling: {0}")]
    UnsupportedCoupling(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("quadrature resolution too low: {0}")]
    Resolution(String),
    #[error("isoscalar factor undefined: every SU(2) factor vanishes for {0}")]
    UndefinedIsoscalar(String),
}

pub type Result<T> = std::result::Result<T, Error>;

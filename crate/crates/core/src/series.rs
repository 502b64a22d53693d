//! Truncated multivariate power series with exact rational coefficients.
//!
//! This is the engine behind every generating-function oracle in the crate:
//! coefficients are `BigRational`, exponent tuples are dense fixed-length
//! arrays keyed in a hash map, and truncation is by *total* degree, which is
//! the grading every generating function here is indexed by.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::numeric::{rat_int, BigRational};
use crate::{Error, Result};

/// A multivariate power series truncated at a fixed total degree.
///
/// No explicitly stored zero coefficients; every stored exponent tuple has
/// the full variable-list length and total degree within budget.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSeries {
    variables: Vec<String>,
    max_total_degree: u32,
    terms: HashMap<Vec<u32>, BigRational>,
}

impl MultiSeries {
    pub fn zero(variables: &[&str], max_total_degree: u32) -> Self {
        MultiSeries {
            variables: variables.iter().map(|s| s.to_string()).collect(),
            max_total_degree,
            terms: HashMap::new(),
        }
    }

    pub fn constant(variables: &[&str], max_total_degree: u32, value: BigRational) -> Self {
        let mut s = Self::zero(variables, max_total_degree);
        if !value.is_zero() {
            s.terms.insert(vec![0; s.variables.len()], value);
        }
        s
    }

    pub fn one(variables: &[&str], max_total_degree: u32) -> Self {
        Self::constant(variables, max_total_degree, BigRational::one())
    }

    /// The series consisting of a single variable to the first power.
    pub fn var(variables: &[&str], max_total_degree: u32, name: &str) -> Result<Self> {
        let mut s = Self::zero(variables, max_total_degree);
        let idx = s
            .variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
        let mut exps = vec![0; s.variables.len()];
        exps[idx] = 1;
        if 1 <= max_total_degree {
            s.terms.insert(exps, BigRational::one());
        }
        Ok(s)
    }

    /// A single monomial term.
    pub fn monomial(
        variables: &[&str],
        max_total_degree: u32,
        exponents: &[u32],
        coeff: BigRational,
    ) -> Result<Self> {
        let mut s = Self::zero(variables, max_total_degree);
        s.check_tuple(exponents)?;
        if !coeff.is_zero() {
            s.terms.insert(exponents.to_vec(), coeff);
        }
        Ok(s)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn max_total_degree(&self) -> u32 {
        self.max_total_degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_tuple(&self, exponents: &[u32]) -> Result<()> {
        if exponents.len() != self.variables.len() {
            return Err(Error::ExponentRange(format!(
                "tuple length {} does not match {} variables",
                exponents.len(),
                self.variables.len()
            )));
        }
        let total: u32 = exponents.iter().sum();
        if total > self.max_total_degree {
            return Err(Error::ExponentRange(format!(
                "total degree {total} exceeds budget {}",
                self.max_total_degree
            )));
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.variables != other.variables {
            return Err(Error::VariableMismatch(self.variables.clone(), other.variables.clone()));
        }
        Ok(())
    }

    /// Stored coefficient, or zero for an absent in-range tuple.
    pub fn coefficient(&self, exponents: &[u32]) -> Result<BigRational> {
        self.check_tuple(exponents)?;
        Ok(self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&vec![0; self.variables.len()][..]).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Exact truncated sum; the result keeps the smaller degree budget.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let budget = self.max_total_degree.min(other.max_total_degree);
        let mut terms = HashMap::new();
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            if e.iter().sum::<u32>() > budget {
                continue;
            }
            let entry = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        terms.retain(|_, c: &mut BigRational| !c.is_zero());
        Ok(MultiSeries { variables: self.variables.clone(), max_total_degree: budget, terms })
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c = -c.clone();
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let mut s = self.clone();
        if factor.is_zero() {
            s.terms.clear();
            return s;
        }
        for c in s.terms.values_mut() {
            *c *= factor;
        }
        s
    }

    /// Exact truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let budget = self.max_total_degree.min(other.max_total_degree);
        let mut terms: HashMap<Vec<u32>, BigRational> = HashMap::new();
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            if da > budget {
                continue;
            }
            for (eb, cb) in &other.terms {
                let db: u32 = eb.iter().sum();
                if da + db > budget {
                    continue;
                }
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(exps).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c: &mut BigRational| !c.is_zero());
        Ok(MultiSeries { variables: self.variables.clone(), max_total_degree: budget, terms })
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(
            &self.variables.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            self.max_total_degree,
        );
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `exp(f) = sum f^k / k!` truncated exactly; `f` must have zero
    /// constant term so the sum is finite.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Domain("series_exp requires zero constant term".into()));
        }
        let vars: Vec<&str> = self.variables.iter().map(|s| s.as_str()).collect();
        let mut acc = Self::one(&vars, self.max_total_degree);
        let mut power = Self::one(&vars, self.max_total_degree);
        let mut kfact = BigRational::one();
        for k in 1..=self.max_total_degree {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            kfact *= rat_int(k as i64);
            acc = acc.add(&power.scale(&kfact.recip()))?;
        }
        Ok(acc)
    }

    /// `(1 - f)^(-power) = sum C(power+k-1, k) f^k` truncated exactly;
    /// `f` must have zero constant term.
    pub fn geom(&self, power: u32) -> Result<Self> {
        if power == 0 {
            return Err(Error::Domain("series_geom requires a positive power".into()));
        }
        if !self.constant_term().is_zero() {
            return Err(Error::Domain("series_geom requires zero constant term".into()));
        }
        let vars: Vec<&str> = self.variables.iter().map(|s| s.as_str()).collect();
        let mut acc = Self::one(&vars, self.max_total_degree);
        let mut fk = Self::one(&vars, self.max_total_degree);
        let mut coeff = BigRational::one();
        for k in 1..=self.max_total_degree {
            fk = fk.mul(self)?;
            if fk.is_zero() {
                break;
            }
            // C(power+k-1, k) = C(power+k-2, k-1) * (power+k-1) / k
            coeff = coeff * rat_int((power + k - 1) as i64) / rat_int(k as i64);
            acc = acc.add(&fk.scale(&coeff))?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    const XY: &[&str] = &["x", "y"];

    fn x(deg: u32) -> MultiSeries {
        MultiSeries::var(XY, deg, "x").unwrap()
    }

    fn y(deg: u32) -> MultiSeries {
        MultiSeries::var(XY, deg, "y").unwrap()
    }

    #[test]
    fn mul_truncates_by_total_degree() {
        // (1+x)(1-x) at degree 2 = 1 - x^2
        let one = MultiSeries::one(XY, 2);
        let a = one.add(&x(2)).unwrap();
        let b = one.sub(&x(2)).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coefficient(&[0, 0]).unwrap(), rat_int(1));
        assert_eq!(p.coefficient(&[1, 0]).unwrap(), rat_int(0));
        assert_eq!(p.coefficient(&[2, 0]).unwrap(), rat_int(-1));

        // x*y at degree 1 truncates away entirely
        let p = x(1).mul(&y(1)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn square_of_trinomial() {
        // (1+x+y)^2 at degree 2
        let s = MultiSeries::one(XY, 2).add(&x(2)).unwrap().add(&y(2)).unwrap();
        let sq = s.pow(2).unwrap();
        assert_eq!(sq.coefficient(&[0, 0]).unwrap(), rat_int(1));
        assert_eq!(sq.coefficient(&[1, 0]).unwrap(), rat_int(2));
        assert_eq!(sq.coefficient(&[0, 1]).unwrap(), rat_int(2));
        assert_eq!(sq.coefficient(&[2, 0]).unwrap(), rat_int(1));
        assert_eq!(sq.coefficient(&[1, 1]).unwrap(), rat_int(2));
        assert_eq!(sq.coefficient(&[0, 2]).unwrap(), rat_int(1));
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let a = MultiSeries::one(&["x"], 2);
        let b = MultiSeries::one(&["y"], 2);
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn exp_examples() {
        // exp(x) at degree 3
        let e = x(3).exp().unwrap();
        assert_eq!(e.coefficient(&[0, 0]).unwrap(), rat_int(1));
        assert_eq!(e.coefficient(&[1, 0]).unwrap(), rat_int(1));
        assert_eq!(e.coefficient(&[2, 0]).unwrap(), rat(1, 2));
        assert_eq!(e.coefficient(&[3, 0]).unwrap(), rat(1, 6));

        // exp(0) = 1
        let z = MultiSeries::zero(XY, 3).exp().unwrap();
        assert_eq!(z, MultiSeries::one(XY, 3));

        // exp(x + y^2) at degree 2 = 1 + x + x^2/2 + y^2
        let f = x(2).add(&y(2).pow(2).unwrap()).unwrap();
        let e = f.exp().unwrap();
        assert_eq!(e.coefficient(&[1, 0]).unwrap(), rat_int(1));
        assert_eq!(e.coefficient(&[2, 0]).unwrap(), rat(1, 2));
        assert_eq!(e.coefficient(&[0, 2]).unwrap(), rat_int(1));
        assert_eq!(e.coefficient(&[1, 1]).unwrap(), rat_int(0));
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert!(MultiSeries::one(XY, 3).exp().is_err());
    }

    #[test]
    fn geom_examples() {
        // (1-x)^{-1} at degree 3
        let g = x(3).geom(1).unwrap();
        for k in 0..=3 {
            assert_eq!(g.coefficient(&[k, 0]).unwrap(), rat_int(1));
        }
        // (1-x)^{-2} at degree 2: 1 + 2x + 3x^2
        let g = x(2).geom(2).unwrap();
        assert_eq!(g.coefficient(&[0, 0]).unwrap(), rat_int(1));
        assert_eq!(g.coefficient(&[1, 0]).unwrap(), rat_int(2));
        assert_eq!(g.coefficient(&[2, 0]).unwrap(), rat_int(3));
        // (1-(x+y))^{-2} at degree 2
        let f = x(2).add(&y(2)).unwrap();
        let g = f.geom(2).unwrap();
        assert_eq!(g.coefficient(&[1, 0]).unwrap(), rat_int(2));
        assert_eq!(g.coefficient(&[0, 1]).unwrap(), rat_int(2));
        assert_eq!(g.coefficient(&[2, 0]).unwrap(), rat_int(3));
        assert_eq!(g.coefficient(&[1, 1]).unwrap(), rat_int(6));
        assert_eq!(g.coefficient(&[0, 2]).unwrap(), rat_int(3));
    }

    #[test]
    fn coefficient_bounds_checked() {
        let s = MultiSeries::one(XY, 2);
        assert!(s.coefficient(&[3, 0]).is_err());
        assert!(s.coefficient(&[1]).is_err());
        assert_eq!(s.coefficient(&[0, 1]).unwrap(), rat_int(0));
    }

    #[test]
    fn exp_times_exp_of_negation_is_one() {
        let f = x(4).add(&y(4).scale(&rat(2, 3))).unwrap();
        let p = f.exp().unwrap().mul(&f.neg().exp().unwrap()).unwrap();
        assert_eq!(p, MultiSeries::one(XY, 4));
    }

    #[test]
    fn geom_is_inverse_of_one_minus_f() {
        let f = x(4).add(&y(4).scale(&rat(-1, 2))).unwrap();
        let lhs = f.geom(1).unwrap().mul(&MultiSeries::one(XY, 4).sub(&f).unwrap()).unwrap();
        assert_eq!(lhs, MultiSeries::one(XY, 4));
    }
}

//! Exact multivariate polynomials with non-negative integer coefficients.
//!
//! These carry symbolic probability weights through the enumeration engine,
//! so that pass probabilities and posterior classes come out as exact
//! coefficient vectors rather than floating-point approximations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// The formal variables a polynomial ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarSet {
    /// `F` (weight of Phi+) and `G` (weight of each other label).
    Werner,
    /// One variable per label: `p00, p01, p10, p11`.
    General,
}

impl VarSet {
    pub fn names(self) -> &'static [&'static str] {
        match self {
            VarSet::Werner => &["F", "G"],
            VarSet::General => &["p00", "p01", "p10", "p11"],
        }
    }

    pub fn arity(self) -> usize {
        self.names().len()
    }

    /// Per-label weights in label-code order 00, 01, 10, 11.
    pub fn label_weights(self) -> [BellPolynomial; 4] {
        match self {
            VarSet::Werner => {
                let f = BellPolynomial::var(self, 0);
                let g = BellPolynomial::var(self, 1);
                [f, g.clone(), g.clone(), g]
            }
            VarSet::General => std::array::from_fn(|i| BellPolynomial::var(self, i)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BellPolynomial {
    vars: VarSet,
    // No zero coefficients are ever stored.
    terms: BTreeMap<Vec<u32>, BigUint>,
}

impl BellPolynomial {
    pub fn zero(vars: VarSet) -> Self {
        BellPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: VarSet) -> Self {
        Self::monomial(vars, &vec![0; vars.arity()], 1u32)
    }

    pub fn var(vars: VarSet, index: usize) -> Self {
        let mut exps = vec![0; vars.arity()];
        exps[index] = 1;
        Self::monomial(vars, &exps, 1u32)
    }

    pub fn monomial(vars: VarSet, exponents: &[u32], coefficient: impl Into<BigUint>) -> Self {
        assert_eq!(exponents.len(), vars.arity(), "exponent vector length");
        let mut p = Self::zero(vars);
        let c = coefficient.into();
        if !c.is_zero() {
            p.terms.insert(exponents.to_vec(), c);
        }
        p
    }

    /// Sum of `coefficient * monomial` terms; repeated exponents accumulate.
    pub fn from_terms<C: Into<BigUint>>(
        vars: VarSet,
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Self {
        terms.into_iter().fold(Self::zero(vars), |acc, (e, c)| {
            acc + Self::monomial(vars, &e, c)
        })
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigUint)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigUint {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(self.vars), |acc, _| &acc * self)
    }

    /// Numeric value at `point` (one coordinate per variable).
    pub fn evaluate(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.vars.arity(), "evaluation point length");
        self.terms
            .iter()
            .map(|(exps, c)| {
                let c = c.to_f64().unwrap_or(f64::INFINITY);
                exps.iter()
                    .zip(point)
                    .fold(c, |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(
            self.vars, other.vars,
            "polynomials over different variable sets"
        );
    }
}

impl AddAssign<&BellPolynomial> for BellPolynomial {
    fn add_assign(&mut self, rhs: &BellPolynomial) {
        self.check_vars(rhs);
        for (e, c) in &rhs.terms {
            *self.terms.entry(e.clone()).or_default() += c;
        }
    }
}

impl<'a> Add<&'a BellPolynomial> for &'a BellPolynomial {
    type Output = BellPolynomial;

    fn add(self, rhs: &'a BellPolynomial) -> BellPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BellPolynomial {
    type Output = BellPolynomial;

    fn add(mut self, rhs: BellPolynomial) -> BellPolynomial {
        self += &rhs;
        self
    }
}

impl<'a> Mul<&'a BellPolynomial> for &'a BellPolynomial {
    type Output = BellPolynomial;

    fn mul(self, rhs: &'a BellPolynomial) -> BellPolynomial {
        self.check_vars(rhs);
        let mut out = BellPolynomial::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *out.terms.entry(e).or_default() += c1 * c2;
            }
        }
        out
    }
}

impl Mul for BellPolynomial {
    type Output = BellPolynomial;

    fn mul(self, rhs: BellPolynomial) -> BellPolynomial {
        &self * &rhs
    }
}

impl serde::Serialize for BellPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Highest-degree-in-the-first-variable terms first, e.g.
/// `F^4 + 18F^2G^2 + 24FG^3 + 21G^4`.
impl fmt::Display for BellPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        let sep = if names.iter().all(|n| n.len() == 1) { "" } else { "*" };
        for (k, (exps, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = exps
                .iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(&e, n)| if e == 1 { n.to_string() } else { format!("{n}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c}{sep}")?;
                }
                write!(f, "{}", factors.join(sep))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fg(terms: &[([u32; 2], u32)]) -> BellPolynomial {
        BellPolynomial::from_terms(VarSet::Werner, terms.iter().map(|(e, c)| (e.to_vec(), *c)))
    }

    #[test]
    fn display_matches_conventional_form() {
        let p = fg(&[([4, 0], 1), ([2, 2], 18), ([1, 3], 24), ([0, 4], 21)]);
        assert_eq!(p.to_string(), "F^4 + 18F^2G^2 + 24FG^3 + 21G^4");
        assert_eq!(BellPolynomial::zero(VarSet::Werner).to_string(), "0");
        assert_eq!(BellPolynomial::one(VarSet::Werner).to_string(), "1");
        let g = BellPolynomial::monomial(VarSet::General, &[2, 0, 0, 1], 2u32);
        assert_eq!(g.to_string(), "2*p00^2*p11");
    }

    #[test]
    fn binomial_expansion() {
        let [f, g, _, _] = VarSet::Werner.label_weights();
        let s = &f + &(&g + &(&g + &g));
        let p = s.pow(4);
        // (F + 3G)^4
        let expected = fg(&[([4, 0], 1), ([3, 1], 12), ([2, 2], 54), ([1, 3], 108), ([0, 4], 81)]);
        assert_eq!(p, expected);
    }

    #[test]
    fn evaluation_matches_direct_sum() {
        let p = fg(&[([4, 0], 1), ([2, 2], 18), ([1, 3], 24), ([0, 4], 21)]);
        let (x, y): (f64, f64) = (0.8, 0.2 / 3.0);
        let direct = x.powi(4) + 18.0 * x * x * y * y + 24.0 * x * y.powi(3) + 21.0 * y.powi(4);
        assert!((p.evaluate(&[x, y]) - direct).abs() < 1e-12);
    }

    #[test]
    fn zero_terms_are_not_stored() {
        let p = BellPolynomial::monomial(VarSet::Werner, &[1, 0], 0u32);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    #[should_panic(expected = "different variable sets")]
    fn mixing_variable_sets_panics() {
        let _ = &BellPolynomial::one(VarSet::Werner) + &BellPolynomial::one(VarSet::General);
    }
}

//! Polynomials in `w = (D^α G)/G` with [`ParamExpr`] coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::expr::{ParamExpr, Relations, Symbol};

/// `Σ c_m w^m`, stored low power first, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WPolynomial {
    coeffs: Vec<ParamExpr>,
}

impl WPolynomial {
    pub fn zero() -> Self {
        WPolynomial::default()
    }

    pub fn constant(c: ParamExpr) -> Self {
        WPolynomial::from_coeffs(vec![c])
    }

    /// `w^m`.
    pub fn monomial(power: usize) -> Self {
        let mut coeffs = vec![ParamExpr::zero(); power + 1];
        coeffs[power] = ParamExpr::one();
        WPolynomial { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<ParamExpr>) -> Self {
        let mut p = WPolynomial { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(ParamExpr::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, power: usize) -> ParamExpr {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[ParamExpr] {
        &self.coeffs
    }

    pub fn scale(&self, factor: &ParamExpr) -> WPolynomial {
        WPolynomial::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn pow(&self, exponent: u32) -> WPolynomial {
        let mut acc = WPolynomial::constant(ParamExpr::one());
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_coeffs<F: FnMut(&ParamExpr) -> ParamExpr>(&self, f: F) -> WPolynomial {
        WPolynomial::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn substitute(&self, map: &BTreeMap<Symbol, ParamExpr>) -> WPolynomial {
        self.map_coeffs(|c| c.substitute(map))
    }

    pub fn reduce(&self, relations: &Relations) -> WPolynomial {
        self.map_coeffs(|c| c.reduce(relations))
    }
}

/// `D^α` on a w-polynomial, from `D^α(w) = −w² − λw − μ` and the chain rule:
/// `D^α(w^n) = n(−w^(n+1) − λw^n − μw^(n−1))`; constants go to zero.
pub fn apply_w_derivative(p: &WPolynomial) -> WPolynomial {
    let lambda = ParamExpr::symbol(Symbol::Lambda);
    let mu = ParamExpr::symbol(Symbol::Mu);
    let top = p.coeffs.len();
    let mut out = vec![ParamExpr::zero(); top + 1];
    for (n, c) in p.coeffs.iter().enumerate().skip(1) {
        let nc = c.scale(&num_rational::BigRational::from_integer((n as i64).into()));
        out[n + 1] = &out[n + 1] - &nc;
        out[n] = &out[n] - &(&nc * &lambda);
        out[n - 1] = &out[n - 1] - &(&nc * &mu);
    }
    WPolynomial::from_coeffs(out)
}

impl Add for &WPolynomial {
    type Output = WPolynomial;
    fn add(self, rhs: &WPolynomial) -> WPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        WPolynomial::from_coeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Add for WPolynomial {
    type Output = WPolynomial;
    fn add(self, rhs: WPolynomial) -> WPolynomial {
        &self + &rhs
    }
}

impl Neg for &WPolynomial {
    type Output = WPolynomial;
    fn neg(self) -> WPolynomial {
        self.map_coeffs(|c| -c)
    }
}

impl Sub for &WPolynomial {
    type Output = WPolynomial;
    fn sub(self, rhs: &WPolynomial) -> WPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &WPolynomial {
    type Output = WPolynomial;
    fn mul(self, rhs: &WPolynomial) -> WPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return WPolynomial::zero();
        }
        let mut out = vec![ParamExpr::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        WPolynomial::from_coeffs(out)
    }
}

impl Mul for WPolynomial {
    type Output = WPolynomial;
    fn mul(self, rhs: WPolynomial) -> WPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for WPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match m {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*w")?,
                _ => write!(f, "({c})*w^{m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam() -> ParamExpr {
        ParamExpr::symbol(Symbol::Lambda)
    }
    fn mu() -> ParamExpr {
        ParamExpr::symbol(Symbol::Mu)
    }

    #[test]
    fn derivative_of_w() {
        let d = apply_w_derivative(&WPolynomial::monomial(1));
        let expected = WPolynomial::from_coeffs(vec![-mu(), -lam(), ParamExpr::int(-1)]);
        assert_eq!(d, expected);
    }

    #[test]
    fn derivative_of_w_cubed() {
        let d = apply_w_derivative(&WPolynomial::monomial(3));
        let expected = WPolynomial::from_coeffs(vec![
            ParamExpr::zero(),
            ParamExpr::zero(),
            ParamExpr::int(-3) * mu(),
            ParamExpr::int(-3) * lam(),
            ParamExpr::int(-3),
        ]);
        assert_eq!(d, expected);
    }

    #[test]
    fn constants_vanish() {
        let c = WPolynomial::constant(ParamExpr::symbol(Symbol::Coef(0)) + ParamExpr::int(5));
        assert!(apply_w_derivative(&c).is_zero());
        assert!(apply_w_derivative(&WPolynomial::zero()).is_zero());
    }

    #[test]
    fn trimming_keeps_leading_nonzero() {
        let p = WPolynomial::from_coeffs(vec![ParamExpr::int(1), ParamExpr::zero(), ParamExpr::zero()]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(WPolynomial::zero().degree(), None);
    }

    #[test]
    fn second_derivative_of_quadratic_ansatz() {
        // D²(a0 + a1 w + a2 w²), worked out by hand
        let a = |k| ParamExpr::symbol(Symbol::Coef(k));
        let u = WPolynomial::from_coeffs(vec![a(0), a(1), a(2)]);
        let d2 = apply_w_derivative(&apply_w_derivative(&u));
        let i = ParamExpr::int;
        assert_eq!(d2.coeff(4), i(6) * a(2));
        assert_eq!(d2.coeff(3), i(10) * a(2) * lam() + i(2) * a(1));
        assert_eq!(
            d2.coeff(2),
            i(8) * a(2) * mu() + i(4) * a(2) * lam().pow(2) + i(3) * a(1) * lam()
        );
        assert_eq!(
            d2.coeff(1),
            i(6) * a(2) * lam() * mu() + i(2) * a(1) * mu() + a(1) * lam().pow(2)
        );
        assert_eq!(d2.coeff(0), mu() * (i(2) * a(2) * mu() + lam() * a(1)));
    }
}

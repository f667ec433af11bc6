use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::expr::{ParamExpr, Symbol};
use super::wpoly::{apply_w_derivative, WPolynomial};
use crate::error::SymbolicError;

/// The two equations with closed-form coefficient solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveEquation {
    Kdv,
    Mkdv,
}

impl WaveEquation {
    pub fn name(self) -> &'static str {
        match self {
            WaveEquation::Kdv => "kdv",
            WaveEquation::Mkdv => "mkdv",
        }
    }
}

impl fmt::Display for WaveEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WaveEquation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "kdv" => Ok(WaveEquation::Kdv),
            "mkdv" => Ok(WaveEquation::Mkdv),
            other => Err(format!("unknown equation `{other}` (expected kdv or mkdv)")),
        }
    }
}

/// `C₁ + (cα + f)u + quad·u² + cub·u³ + quart·u⁴ + b·D^{2α}u = 0`, the
/// once-integrated traveling-wave form of
/// `D_t^α u + (a u + h u² + c u³ + f) D_x^α u + b D_x^{3α} u = 0`
/// with `quad = a/2`, `cub = h/3`, `quart = c/4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedOde {
    pub c1: ParamExpr,
    pub c_alpha: ParamExpr,
    pub lin_f: ParamExpr,
    #[serde(with = "rational_string")]
    pub quad: BigRational,
    #[serde(with = "rational_string")]
    pub cub: BigRational,
    #[serde(with = "rational_string")]
    pub quart: BigRational,
    pub disp: ParamExpr,
}

impl ReducedOde {
    /// From the coefficients `a, h, c, f` of the generalized equation, with
    /// symbolic `C₁`, `cα` and `b`.
    pub fn generalized(a: BigRational, h: BigRational, c: BigRational, f: BigRational) -> Self {
        let q = |v: BigRational, d: i64| v / BigRational::from_integer(d.into());
        ReducedOde {
            c1: ParamExpr::symbol(Symbol::Constant),
            c_alpha: ParamExpr::symbol(Symbol::CAlpha),
            lin_f: ParamExpr::constant(f),
            quad: q(a, 2),
            cub: q(h, 3),
            quart: q(c, 4),
            disp: ParamExpr::symbol(Symbol::Dispersion),
        }
    }

    /// `C₁ + cα u + u²/2 + b D^{2α}u = 0`.
    pub fn kdv() -> Self {
        ReducedOde::generalized(
            BigRational::one(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    /// `c₁ + cα u − u³/3 + b D^{2α}u = 0` (the `u²` coefficient enters with a
    /// minus sign, so `h = −1`).
    pub fn mkdv() -> Self {
        ReducedOde::generalized(
            BigRational::zero(),
            -BigRational::one(),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    pub fn for_equation(equation: WaveEquation) -> Self {
        match equation {
            WaveEquation::Kdv => ReducedOde::kdv(),
            WaveEquation::Mkdv => ReducedOde::mkdv(),
        }
    }

    /// Highest power of `u` with a nonzero coefficient among 2, 3, 4.
    pub fn highest_nonlinear_power(&self) -> Option<u32> {
        if !self.quart.is_zero() {
            Some(4)
        } else if !self.cub.is_zero() {
            Some(3)
        } else if !self.quad.is_zero() {
            Some(2)
        } else {
            None
        }
    }

    /// Left-hand side with `u` replaced by the ansatz, as a w-polynomial.
    pub fn substitute(&self, ansatz: &ExpansionAnsatz) -> WPolynomial {
        let u = ansatz.as_polynomial();
        let u2 = &u * &u;
        let u3 = &u2 * &u;
        let u4 = &u3 * &u;
        let second = apply_w_derivative(&apply_w_derivative(&u));
        let linear = &self.c_alpha + &self.lin_f;
        let mut total = WPolynomial::constant(self.c1.clone());
        total = &total + &u.scale(&linear);
        total = &total + &u2.scale(&ParamExpr::constant(self.quad.clone()));
        total = &total + &u3.scale(&ParamExpr::constant(self.cub.clone()));
        total = &total + &u4.scale(&ParamExpr::constant(self.quart.clone()));
        &total + &second.scale(&self.disp)
    }
}

/// `u = Σ_{k=0}^{n} a_k w^k` with `a_n ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionAnsatz {
    coeffs: Vec<ParamExpr>,
}

impl ExpansionAnsatz {
    pub fn new(coeffs: Vec<ParamExpr>) -> Result<Self, SymbolicError> {
        if coeffs.len() < 2 {
            return Err(SymbolicError::AnsatzTooShort);
        }
        if coeffs.last().is_some_and(ParamExpr::is_zero) {
            return Err(SymbolicError::ZeroLeadingCoefficient);
        }
        Ok(ExpansionAnsatz { coeffs })
    }

    /// `a_0 + a_1 w + … + a_n w^n` with symbolic coefficients.
    pub fn symbolic(degree: usize) -> Self {
        assert!(degree >= 1, "ansatz degree must be positive");
        ExpansionAnsatz {
            coeffs: (0..=degree).map(|k| ParamExpr::symbol(Symbol::Coef(k as u8))).collect(),
        }
    }

    /// The substitution `u ≡ 0` at a nominal degree. It deliberately breaks
    /// the `a_n ≠ 0` condition and exists to probe the system builder.
    pub fn trivial(degree: usize) -> Self {
        ExpansionAnsatz {
            coeffs: vec![ParamExpr::zero(); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ParamExpr] {
        &self.coeffs
    }

    pub fn as_polynomial(&self) -> WPolynomial {
        WPolynomial::from_coeffs(self.coeffs.clone())
    }
}

/// `u^k` for `k ∈ 1..=4`.
pub fn expand_ansatz_power(ansatz: &ExpansionAnsatz, k: u32) -> Result<WPolynomial, SymbolicError> {
    if !(1..=4).contains(&k) {
        return Err(SymbolicError::PowerOutOfRange(k));
    }
    Ok(ansatz.as_polynomial().pow(k))
}

/// Degree `n` making `u^{k*}` and `D^{2α}u` share their top power of `w`:
/// `k*·n = n + 2`.
pub fn homogeneous_balance(ode: &ReducedOde) -> Result<usize, SymbolicError> {
    let power = ode.highest_nonlinear_power().ok_or(SymbolicError::BalanceUndefined)?;
    let denominator = power - 1;
    if 2 % denominator == 0 {
        Ok((2 / denominator) as usize)
    } else {
        Err(SymbolicError::BalanceFails { power, denominator })
    }
}

/// Coefficients of `w^0 … w^max` of the substituted ODE, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientSystem {
    pub degree: usize,
    pub equations: Vec<ParamExpr>,
    pub unknowns: Vec<Symbol>,
    /// The ansatz leading coefficient, when it is a bare symbol.
    pub leading: Option<Symbol>,
}

impl CoefficientSystem {
    /// Substitute without checking the balance condition. Used directly for
    /// ODEs whose balance is non-integer (a quartic term), where the caller
    /// picks the degree.
    pub fn from_substitution(ode: &ReducedOde, ansatz: &ExpansionAnsatz) -> Self {
        let residual = ode.substitute(ansatz);
        let n = ansatz.degree();
        let k = ode.highest_nonlinear_power().unwrap_or(1) as usize;
        let max_power = (k * n).max(n + 2);
        let equations = (0..=max_power).map(|m| residual.coeff(m)).collect();

        let mut unknowns: BTreeSet<Symbol> = BTreeSet::new();
        let mut collect = |e: &ParamExpr| unknowns.extend(e.symbols().into_iter().filter(|s| s.is_unknown()));
        collect(&ode.c1);
        collect(&ode.c_alpha);
        ansatz.coeffs().iter().for_each(&mut collect);
        CoefficientSystem {
            degree: n,
            equations,
            unknowns: unknowns.into_iter().collect(),
            leading: ansatz.coeffs().last().and_then(ParamExpr::as_symbol),
        }
    }

    pub fn max_power(&self) -> usize {
        self.equations.len() - 1
    }

    pub fn equation(&self, power: usize) -> &ParamExpr {
        &self.equations[power]
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.equations.iter().flat_map(ParamExpr::symbols).collect()
    }
}

/// Balanced substitution of `ansatz` into `ode`.
pub fn build_coefficient_system(
    ode: &ReducedOde,
    ansatz: &ExpansionAnsatz,
) -> Result<CoefficientSystem, SymbolicError> {
    let balanced = homogeneous_balance(ode)?;
    if ansatz.degree() != balanced {
        return Err(SymbolicError::DegreeMismatch {
            ansatz: ansatz.degree(),
            balanced,
        });
    }
    Ok(CoefficientSystem::from_substitution(ode, ansatz))
}

/// The symbolic system for one of the two named equations.
pub fn derive_system(equation: WaveEquation) -> CoefficientSystem {
    let ode = ReducedOde::for_equation(equation);
    let n = homogeneous_balance(&ode).expect("named equations balance");
    build_coefficient_system(&ode, &ExpansionAnsatz::symbolic(n)).expect("degree matches balance")
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigRational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(deserializer)?;
        crate::symbolic::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(k: u8) -> ParamExpr {
        ParamExpr::symbol(Symbol::Coef(k))
    }
    fn b() -> ParamExpr {
        ParamExpr::symbol(Symbol::Dispersion)
    }
    fn lam() -> ParamExpr {
        ParamExpr::symbol(Symbol::Lambda)
    }
    fn i(v: i64) -> ParamExpr {
        ParamExpr::int(v)
    }

    #[test]
    fn balance_values() {
        assert_eq!(homogeneous_balance(&ReducedOde::kdv()).unwrap(), 2);
        assert_eq!(homogeneous_balance(&ReducedOde::mkdv()).unwrap(), 1);
        let quartic = ReducedOde::generalized(
            BigRational::zero(),
            BigRational::zero(),
            BigRational::one(),
            BigRational::zero(),
        );
        assert_eq!(
            homogeneous_balance(&quartic),
            Err(SymbolicError::BalanceFails {
                power: 4,
                denominator: 3
            })
        );
        let linear = ReducedOde::generalized(
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::one(),
        );
        assert_eq!(homogeneous_balance(&linear), Err(SymbolicError::BalanceUndefined));
    }

    #[test]
    fn kdv_top_equations() {
        let sys = derive_system(WaveEquation::Kdv);
        assert_eq!(sys.equations.len(), 5);
        assert_eq!(
            sys.equation(4),
            &(ParamExpr::ratio(1, 2) * a(2).pow(2) + i(6) * b() * a(2))
        );
        assert_eq!(
            sys.equation(3),
            &(a(1) * a(2) + b() * (i(10) * lam() * a(2) + i(2) * a(1)))
        );
        assert_eq!(sys.leading, Some(Symbol::Coef(2)));
        assert_eq!(
            sys.unknowns,
            vec![
                Symbol::Coef(0),
                Symbol::Coef(1),
                Symbol::Coef(2),
                Symbol::CAlpha,
                Symbol::Constant
            ]
        );
    }

    #[test]
    fn mkdv_top_equation() {
        let sys = derive_system(WaveEquation::Mkdv);
        assert_eq!(sys.equations.len(), 4);
        assert_eq!(
            sys.equation(3),
            &(ParamExpr::ratio(-1, 3) * a(1).pow(3) + i(2) * a(1) * b())
        );
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let err = build_coefficient_system(&ReducedOde::kdv(), &ExpansionAnsatz::symbolic(1)).unwrap_err();
        assert_eq!(err, SymbolicError::DegreeMismatch { ansatz: 1, balanced: 2 });
    }

    #[test]
    fn zero_ansatz_leaves_only_the_constant() {
        let sys = build_coefficient_system(&ReducedOde::kdv(), &ExpansionAnsatz::trivial(2)).unwrap();
        assert_eq!(sys.equations.len(), 5);
        assert_eq!(sys.equation(0), &ParamExpr::symbol(Symbol::Constant));
        assert!(sys.equations[1..].iter().all(ParamExpr::is_zero));
    }

    #[test]
    fn ansatz_constructor_checks_leading() {
        assert_eq!(
            ExpansionAnsatz::new(vec![a(0), ParamExpr::zero()]),
            Err(SymbolicError::ZeroLeadingCoefficient)
        );
        assert!(ExpansionAnsatz::new(vec![a(0), a(1)]).is_ok());
    }

    #[test]
    fn power_expansion_matches_known_cube() {
        let ans = ExpansionAnsatz::symbolic(1);
        let cube = expand_ansatz_power(&ans, 3).unwrap();
        assert_eq!(cube.coeff(0), a(0).pow(3));
        assert_eq!(cube.coeff(1), i(3) * a(0).pow(2) * a(1));
        assert_eq!(cube.coeff(2), i(3) * a(0) * a(1).pow(2));
        assert_eq!(cube.coeff(3), a(1).pow(3));
        assert_eq!(expand_ansatz_power(&ans, 1).unwrap(), ans.as_polynomial());
        assert!(expand_ansatz_power(&ans, 5).is_err());
    }

    #[test]
    fn quadratic_square_has_six_terms() {
        let sq = expand_ansatz_power(&ExpansionAnsatz::symbolic(2), 2).unwrap();
        let expected = [
            a(0).pow(2),
            i(2) * a(0) * a(1),
            a(1).pow(2) + i(2) * a(0) * a(2),
            i(2) * a(1) * a(2),
            a(2).pow(2),
        ];
        for (m, e) in expected.iter().enumerate() {
            assert_eq!(&sq.coeff(m), e, "w^{m}");
        }
        let total_terms: usize = sq.coeffs().iter().map(ParamExpr::len).sum();
        assert_eq!(total_terms, 6);
    }
}

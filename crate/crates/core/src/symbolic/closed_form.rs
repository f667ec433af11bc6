use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::expr::{ParamExpr, Relations, Symbol};
use super::system::{CoefficientSystem, WaveEquation};
use crate::error::SymbolicError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignBranch {
    Plus,
    Minus,
}

impl SignBranch {
    pub fn sign(self) -> i64 {
        match self {
            SignBranch::Plus => 1,
            SignBranch::Minus => -1,
        }
    }
}

impl fmt::Display for SignBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignBranch::Plus => "+",
            SignBranch::Minus => "-",
        })
    }
}

/// Free parameters of the closed-form solutions. Any of them may be a bare
/// symbol or an exact number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormParams {
    pub a0: ParamExpr,
    pub b: ParamExpr,
    pub lambda: ParamExpr,
    pub mu: ParamExpr,
}

impl ClosedFormParams {
    pub fn symbolic() -> Self {
        ClosedFormParams {
            a0: ParamExpr::symbol(Symbol::Coef(0)),
            b: ParamExpr::symbol(Symbol::Dispersion),
            lambda: ParamExpr::symbol(Symbol::Lambda),
            mu: ParamExpr::symbol(Symbol::Mu),
        }
    }

    pub fn numeric(b: BigRational, lambda: BigRational, mu: BigRational, a0: BigRational) -> Self {
        ClosedFormParams {
            a0: a0.into(),
            b: b.into(),
            lambda: lambda.into(),
            mu: mu.into(),
        }
    }

    /// Exact conversion from doubles; `None` if any value is not finite.
    pub fn from_f64(b: f64, lambda: f64, mu: f64, a0: f64) -> Option<Self> {
        Some(ClosedFormParams {
            a0: ParamExpr::from_f64(a0)?,
            b: ParamExpr::from_f64(b)?,
            lambda: ParamExpr::from_f64(lambda)?,
            mu: ParamExpr::from_f64(mu)?,
        })
    }

    /// Bindings of the parameter symbols themselves.
    fn parameter_bindings(&self) -> BTreeMap<Symbol, ParamExpr> {
        BTreeMap::from([
            (Symbol::Dispersion, self.b.clone()),
            (Symbol::Lambda, self.lambda.clone()),
            (Symbol::Mu, self.mu.clone()),
        ])
    }
}

/// A solution of a coefficient system: values for the unknowns (and for the
/// parameters, when those were fixed), plus the rewrite relations needed to
/// normalize it (`s² → 6b` for the mKdV branches).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub equation: WaveEquation,
    pub branch: Option<SignBranch>,
    pub values: BTreeMap<Symbol, ParamExpr>,
    pub relations: Relations,
}

impl Assignment {
    pub fn get(&self, symbol: Symbol) -> Option<&ParamExpr> {
        self.values.get(&symbol)
    }

    pub fn with_value(mut self, symbol: Symbol, value: ParamExpr) -> Self {
        self.values.insert(symbol, value);
        self
    }

    /// Numeric values of every bound symbol. `extra` supplies numbers for
    /// parameters left symbolic; relation symbols (`s`) take the positive root.
    pub fn evaluate(&self, extra: &BTreeMap<Symbol, f64>) -> Result<BTreeMap<Symbol, f64>, SymbolicError> {
        let mut env = extra.clone();
        for (&symbol, value) in &self.values {
            if let Some(c) = value.as_constant() {
                env.entry(symbol)
                    .or_insert_with(|| num_traits::ToPrimitive::to_f64(&c).unwrap_or(f64::NAN));
            }
        }
        self.relations.derive_values(&mut env)?;
        let mut out = BTreeMap::new();
        for (&symbol, value) in &self.values {
            out.insert(symbol, value.eval_map(&env)?);
        }
        Ok(out)
    }
}

/// Closed-form coefficient solutions.
///
/// KdV returns one family:
/// `a₁ = −12bλ, a₂ = −12b, cα = −a₀ − 8bμ − bλ²,
///  C₁ = −cα a₀ − a₀²/2 + 12b²μ(2μ + λ²)`.
///
/// mKdV returns the two branches `a₁ = ±s, a₀ = ±(λ/2)s` with `s² = 6b`,
/// `cα = bλ²/2 − 2bμ` and `C₁ = 0`.
pub fn solve_closed_form(equation: WaveEquation, params: &ClosedFormParams) -> Result<Vec<Assignment>, SymbolicError> {
    if let Some(b) = params.b.as_constant() {
        if b.is_zero() {
            return Err(SymbolicError::DegenerateDispersion);
        }
        if equation == WaveEquation::Mkdv && b.is_negative() {
            return Err(SymbolicError::Reality(b.to_string()));
        }
    }
    let i = ParamExpr::int;
    let (b, lambda, mu) = (&params.b, &params.lambda, &params.mu);
    let lambda2 = lambda.pow(2);
    match equation {
        WaveEquation::Kdv => {
            let a0 = &params.a0;
            let c_alpha = -a0 - i(8) * b * mu - b * &lambda2;
            let c1 =
                -(&c_alpha * a0) - ParamExpr::ratio(1, 2) * a0.pow(2) + i(12) * b.pow(2) * mu * (i(2) * mu + lambda2);
            let mut values = params.parameter_bindings();
            values.insert(Symbol::Coef(0), a0.clone());
            values.insert(Symbol::Coef(1), i(-12) * b * lambda);
            values.insert(Symbol::Coef(2), i(-12) * b);
            values.insert(Symbol::CAlpha, c_alpha);
            values.insert(Symbol::Constant, c1);
            Ok(vec![Assignment {
                equation,
                branch: None,
                values,
                relations: Relations::new(),
            }])
        }
        WaveEquation::Mkdv => {
            let s = ParamExpr::symbol(Symbol::Sqrt6b);
            let c_alpha = ParamExpr::ratio(1, 2) * b * &lambda2 - i(2) * b * mu;
            let relations = Relations::sqrt_six_b(b);
            Ok([SignBranch::Plus, SignBranch::Minus]
                .into_iter()
                .map(|branch| {
                    let signed_s = i(branch.sign()) * s.clone();
                    let mut values = params.parameter_bindings();
                    values.insert(Symbol::Coef(0), ParamExpr::ratio(1, 2) * lambda * &signed_s);
                    values.insert(Symbol::Coef(1), signed_s);
                    values.insert(Symbol::CAlpha, c_alpha.clone());
                    values.insert(Symbol::Constant, ParamExpr::zero());
                    Assignment {
                        equation,
                        branch: Some(branch),
                        values,
                        relations: relations.clone(),
                    }
                })
                .collect())
        }
    }
}

/// Outcome of substituting an assignment into a system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignmentCheck {
    pub satisfied: bool,
    /// One normalized residual per equation, ascending powers of `w`.
    pub residuals: Vec<ParamExpr>,
}

/// Substitute, normalize under the assignment's relations, and test every
/// equation for exact zero.
pub fn verify_assignment(
    system: &CoefficientSystem,
    assignment: &Assignment,
) -> Result<AssignmentCheck, SymbolicError> {
    for symbol in system.symbols() {
        if symbol.is_unknown() && !assignment.values.contains_key(&symbol) {
            return Err(SymbolicError::Unbound(symbol));
        }
    }
    let residuals: Vec<ParamExpr> = system
        .equations
        .iter()
        .map(|e| e.substitute(&assignment.values).reduce(&assignment.relations))
        .collect();
    Ok(AssignmentCheck {
        satisfied: residuals.iter().all(ParamExpr::is_zero),
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::derive_system;

    fn sym(s: Symbol) -> ParamExpr {
        ParamExpr::symbol(s)
    }

    #[test]
    fn kdv_symbolic_values() {
        let sol = solve_closed_form(WaveEquation::Kdv, &ClosedFormParams::symbolic()).unwrap();
        assert_eq!(sol.len(), 1);
        let s = &sol[0];
        let (b, l, m) = (sym(Symbol::Dispersion), sym(Symbol::Lambda), sym(Symbol::Mu));
        assert_eq!(
            s.get(Symbol::Coef(1)).unwrap(),
            &(ParamExpr::int(-12) * b.clone() * l.clone())
        );
        assert_eq!(s.get(Symbol::Coef(2)).unwrap(), &(ParamExpr::int(-12) * b.clone()));
        let c_alpha = -sym(Symbol::Coef(0)) - ParamExpr::int(8) * b.clone() * m - b * l.pow(2);
        assert_eq!(s.get(Symbol::CAlpha).unwrap(), &c_alpha);
    }

    #[test]
    fn kdv_and_mkdv_round_trip() {
        for eq in [WaveEquation::Kdv, WaveEquation::Mkdv] {
            let sys = derive_system(eq);
            for a in solve_closed_form(eq, &ClosedFormParams::symbolic()).unwrap() {
                let check = verify_assignment(&sys, &a).unwrap();
                assert!(check.satisfied, "{eq} {:?}: {:?}", a.branch, check.residuals);
            }
        }
    }

    #[test]
    fn wrong_sign_leaves_top_residual() {
        let sys = derive_system(WaveEquation::Kdv);
        let good = solve_closed_form(WaveEquation::Kdv, &ClosedFormParams::symbolic())
            .unwrap()
            .remove(0);
        let b = sym(Symbol::Dispersion);
        let bad = good.with_value(Symbol::Coef(2), ParamExpr::int(12) * b.clone());
        let check = verify_assignment(&sys, &bad).unwrap();
        assert!(!check.satisfied);
        assert_eq!(check.residuals[4], ParamExpr::int(144) * b.pow(2));
    }

    #[test]
    fn unbound_unknown_is_reported() {
        let sys = derive_system(WaveEquation::Kdv);
        let mut a = solve_closed_form(WaveEquation::Kdv, &ClosedFormParams::symbolic())
            .unwrap()
            .remove(0);
        a.values.remove(&Symbol::Constant);
        assert_eq!(
            verify_assignment(&sys, &a),
            Err(SymbolicError::Unbound(Symbol::Constant))
        );
    }

    #[test]
    fn negative_dispersion_has_no_real_mkdv_branch() {
        let p = ClosedFormParams::from_f64(-1.0, 0.0, -1.0, 0.0).unwrap();
        assert!(matches!(
            solve_closed_form(WaveEquation::Mkdv, &p),
            Err(SymbolicError::Reality(_))
        ));
        let zero = ClosedFormParams::from_f64(0.0, 0.0, -1.0, 0.0).unwrap();
        assert_eq!(
            solve_closed_form(WaveEquation::Kdv, &zero),
            Err(SymbolicError::DegenerateDispersion)
        );
    }

    #[test]
    fn numeric_evaluation() {
        let p = ClosedFormParams::from_f64(1.0, 1.0, 0.0, 0.0).unwrap();
        let a = solve_closed_form(WaveEquation::Kdv, &p).unwrap().remove(0);
        let v = a.evaluate(&BTreeMap::new()).unwrap();
        assert_eq!(v[&Symbol::Coef(1)], -12.0);
        assert_eq!(v[&Symbol::Coef(2)], -12.0);
        assert_eq!(v[&Symbol::CAlpha], -1.0);
        assert_eq!(v[&Symbol::Constant], 0.0);

        let p = ClosedFormParams::from_f64(6.0, 0.0, -1.0, 0.0).unwrap();
        let branches = solve_closed_form(WaveEquation::Mkdv, &p).unwrap();
        let plus = branches[0].evaluate(&BTreeMap::new()).unwrap();
        let minus = branches[1].evaluate(&BTreeMap::new()).unwrap();
        assert_eq!(plus[&Symbol::Coef(1)], 6.0);
        assert_eq!(minus[&Symbol::Coef(1)], -6.0);
        assert_eq!(plus[&Symbol::Coef(0)], 0.0);
        assert_eq!(plus[&Symbol::CAlpha], 12.0);
    }
}

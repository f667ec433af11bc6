//! Auxiliary-equation solutions, the ratio `w = D^αG/G`, and the closed-form
//! KdV and mKdV solution families as functions of `(x, t)`.
//!
//! The canonical `(A, B)` form, `u = Σ a_k w^k`, is the reference evaluator
//! for every order. Named families are evaluated literally with zero phase
//! shift; they coincide with a canonical instance for `B = 0` (tanh, tan,
//! sech, sec) or `A = 0` (coth, cot, csch, csc), and the reciprocal families
//! use `cosh² − sinh² = 1` or `cos² + sin² = 1`, which holds only at `α = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{MlfError, SolutionError};
use crate::mlf::{
    frac_function, mittag_leffler_real, signed_power, sin_cos, sinh_cosh, FracFunctionKind, FractionalOrder,
    POLE_TOLERANCE,
};
use crate::symbolic::{solve_closed_form, ClosedFormParams, SignBranch, Symbol, WaveEquation};

/// Band around zero inside which the discriminant counts as zero.
pub const DISCRIMINANT_TOLERANCE: f64 = 1e-12;

/// Parameters of `D^{2α}G + λ D^αG + μ G = 0` and the weights of its solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxParams {
    pub lambda: f64,
    pub mu: f64,
    #[serde(rename = "A")]
    pub weight_a: f64,
    #[serde(rename = "B")]
    pub weight_b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuxCase {
    Hyperbolic,
    Trigonometric,
    Rational,
}

impl AuxCase {
    pub fn name(self) -> &'static str {
        match self {
            AuxCase::Hyperbolic => "hyperbolic",
            AuxCase::Trigonometric => "trigonometric",
            AuxCase::Rational => "rational",
        }
    }
}

impl fmt::Display for AuxCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl AuxParams {
    pub fn new(lambda: f64, mu: f64, weight_a: f64, weight_b: f64) -> Result<Self, SolutionError> {
        for (name, v) in [("lambda", lambda), ("mu", mu), ("A", weight_a), ("B", weight_b)] {
            if !v.is_finite() {
                return Err(SolutionError::NonFinite(name));
            }
        }
        if weight_a == 0.0 && weight_b == 0.0 {
            return Err(SolutionError::ZeroWeights);
        }
        Ok(AuxParams {
            lambda,
            mu,
            weight_a,
            weight_b,
        })
    }

    /// `λ² − 4μ`, rounded once.
    pub fn discriminant(&self) -> f64 {
        self.lambda.mul_add(self.lambda, -4.0 * self.mu)
    }

    pub fn case(&self) -> AuxCase {
        let d = self.discriminant();
        let band = DISCRIMINANT_TOLERANCE * (self.lambda * self.lambda).max(4.0 * self.mu.abs()).max(1.0);
        if d.abs() <= band {
            AuxCase::Rational
        } else if d > 0.0 {
            AuxCase::Hyperbolic
        } else {
            AuxCase::Trigonometric
        }
    }

    /// `½√|λ² − 4μ|`, zero in the rational case.
    pub fn half_root(&self) -> f64 {
        match self.case() {
            AuxCase::Rational => 0.0,
            _ => 0.5 * self.discriminant().abs().sqrt(),
        }
    }
}

/// The case-appropriate solution `G(ξ)` of the auxiliary equation.
pub fn aux_solution_g(aux: &AuxParams, alpha: FractionalOrder, xi: f64) -> Result<f64, SolutionError> {
    let a = alpha.value();
    let xa = signed_power(xi, a);
    let envelope = mittag_leffler_real(a, -0.5 * aux.lambda * xa)?;
    let p = aux.half_root() * xa;
    let (wa, wb) = (aux.weight_a, aux.weight_b);
    let body = match aux.case() {
        AuxCase::Hyperbolic => {
            let (s, c) = sinh_cosh(a, p)?;
            wa * c + wb * s
        }
        AuxCase::Trigonometric => {
            let (s, c) = sin_cos(a, p)?;
            wa * c + wb * s
        }
        AuxCase::Rational => wa + wb * xa,
    };
    Ok(envelope * body)
}

/// `w(ξ) = D^αG/G` in closed form.
pub fn ratio_dgg(aux: &AuxParams, alpha: FractionalOrder, xi: f64) -> Result<f64, SolutionError> {
    let a = alpha.value();
    let xa = signed_power(xi, a);
    let k = aux.half_root();
    let p = k * xa;
    let (wa, wb) = (aux.weight_a, aux.weight_b);
    let (num, den) = match aux.case() {
        AuxCase::Hyperbolic => {
            let (s, c) = sinh_cosh(a, p)?;
            (k * (wa * s + wb * c), wa * c + wb * s)
        }
        AuxCase::Trigonometric => {
            let (s, c) = sin_cos(a, p)?;
            (k * (-wa * s + wb * c), wa * c + wb * s)
        }
        AuxCase::Rational => (wb, wa + wb * xa),
    };
    if den.abs() < POLE_TOLERANCE * wa.abs().max(wb.abs()) {
        return Err(SolutionError::Pole { xi });
    }
    Ok(-0.5 * aux.lambda + num / den)
}

/// `sign(cα)·|cα|^(1/α)`.
pub fn wave_speed(c_alpha: f64, alpha: FractionalOrder) -> f64 {
    if alpha.is_classical() {
        c_alpha
    } else {
        signed_power(c_alpha, 1.0 / alpha.value())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    #[serde(rename = "canonical")]
    CanonicalRatio,
    Tanh,
    Coth,
    Sech,
    Csch,
    Tan,
    Cot,
    Sec,
    Csc,
    Rational,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::CanonicalRatio,
        Family::Tanh,
        Family::Coth,
        Family::Sech,
        Family::Csch,
        Family::Tan,
        Family::Cot,
        Family::Sec,
        Family::Csc,
        Family::Rational,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::CanonicalRatio => "canonical",
            Family::Tanh => "tanh",
            Family::Coth => "coth",
            Family::Sech => "sech",
            Family::Csch => "csch",
            Family::Tan => "tan",
            Family::Cot => "cot",
            Family::Sec => "sec",
            Family::Csc => "csc",
            Family::Rational => "rational",
        }
    }

    /// Auxiliary case the family needs; `None` for the canonical form.
    pub fn required_case(self) -> Option<AuxCase> {
        match self {
            Family::CanonicalRatio => None,
            Family::Tanh | Family::Coth | Family::Sech | Family::Csch => Some(AuxCase::Hyperbolic),
            Family::Tan | Family::Cot | Family::Sec | Family::Csc => Some(AuxCase::Trigonometric),
            Family::Rational => Some(AuxCase::Rational),
        }
    }

    pub fn supports(self, equation: WaveEquation) -> bool {
        equation == WaveEquation::Kdv || !matches!(self, Family::Sech | Family::Csch | Family::Sec | Family::Csc)
    }

    fn kind(self) -> Option<FracFunctionKind> {
        Some(match self {
            Family::Tanh => FracFunctionKind::Tanh,
            Family::Coth => FracFunctionKind::Coth,
            Family::Sech => FracFunctionKind::Sech,
            Family::Csch => FracFunctionKind::Csch,
            Family::Tan => FracFunctionKind::Tan,
            Family::Cot => FracFunctionKind::Cot,
            Family::Sec => FracFunctionKind::Sec,
            Family::Csc => FracFunctionKind::Csc,
            Family::CanonicalRatio | Family::Rational => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let name = match lower.as_str() {
            "canonical-ratio" | "canonicalratio" => "canonical",
            "cosech" => "csch",
            "cosec" => "csc",
            other => other,
        };
        Family::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// A fully specified solution. Build with [`SolutionSpec::new`], which
/// checks the family against the auxiliary case and derives the expansion
/// coefficients, `cα` and the wave speed from the closed-form solver.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionSpec {
    equation: WaveEquation,
    family: Family,
    alpha: FractionalOrder,
    aux: AuxParams,
    b: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    sign_branch: Option<SignBranch>,
    /// `a_0, a_1, …` of the expansion.
    coefficients: Vec<f64>,
    c_alpha: f64,
    c: f64,
    case: AuxCase,
}

impl SolutionSpec {
    /// `a0` is used for KdV only; mKdV derives `a_0` from the branch.
    pub fn new(
        equation: WaveEquation,
        family: Family,
        alpha: FractionalOrder,
        aux: AuxParams,
        a0: f64,
        b: f64,
        sign_branch: SignBranch,
    ) -> Result<Self, SolutionError> {
        let aux = AuxParams::new(aux.lambda, aux.mu, aux.weight_a, aux.weight_b)?;
        if !family.supports(equation) {
            return Err(SolutionError::UnsupportedFamily(family.name()));
        }
        let case = aux.case();
        if let Some(required) = family.required_case() {
            if required != case {
                return Err(SolutionError::IncompatibleFamily {
                    family: family.name(),
                    required: required.name(),
                    actual: case.name(),
                });
            }
        }
        let a0_exact = if equation == WaveEquation::Kdv { a0 } else { 0.0 };
        let params =
            ClosedFormParams::from_f64(b, aux.lambda, aux.mu, a0_exact).ok_or(SolutionError::NonFinite("b"))?;
        let assignments = solve_closed_form(equation, &params)?;
        let chosen = match equation {
            WaveEquation::Kdv => &assignments[0],
            WaveEquation::Mkdv => assignments
                .iter()
                .find(|a| a.branch == Some(sign_branch))
                .expect("both mKdV branches are returned"),
        };
        let values = chosen.evaluate(&BTreeMap::new())?;
        let degree = match equation {
            WaveEquation::Kdv => 2,
            WaveEquation::Mkdv => 1,
        };
        let coefficients = (0..=degree).map(|k| values[&Symbol::Coef(k)]).collect();
        let c_alpha = values[&Symbol::CAlpha];
        Ok(SolutionSpec {
            equation,
            family,
            alpha,
            aux,
            b,
            sign_branch: (equation == WaveEquation::Mkdv).then_some(sign_branch),
            coefficients,
            c_alpha,
            c: wave_speed(c_alpha, alpha),
            case,
        })
    }

    pub fn equation(&self) -> WaveEquation {
        self.equation
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn alpha(&self) -> FractionalOrder {
        self.alpha
    }

    pub fn aux(&self) -> &AuxParams {
        &self.aux
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn sign_branch(&self) -> Option<SignBranch> {
        self.sign_branch
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn a0(&self) -> f64 {
        self.coefficients[0]
    }

    pub fn c_alpha(&self) -> f64 {
        self.c_alpha
    }

    /// Wave speed in `ξ = x + c t`.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn case(&self) -> AuxCase {
        self.case
    }

    /// Same parameters, another family.
    pub fn with_family(&self, family: Family) -> Result<Self, SolutionError> {
        let sign = self.sign_branch.unwrap_or(SignBranch::Plus);
        SolutionSpec::new(self.equation, family, self.alpha, self.aux, self.a0(), self.b, sign)
    }

    pub fn xi(&self, x: f64, t: f64) -> f64 {
        x + self.c * t
    }

    fn sigma(&self) -> f64 {
        match self.sign_branch {
            Some(SignBranch::Minus) => -1.0,
            _ => 1.0,
        }
    }
}

/// `u(x, t)` for the given solution.
pub fn evaluate_solution(spec: &SolutionSpec, x: f64, t: f64) -> Result<f64, SolutionError> {
    evaluate_at_xi(spec, spec.xi(x, t), 0.0)
}

/// Named family with `shift` added to its phase; the canonical and rational
/// forms ignore `shift`.
pub fn evaluate_solution_shifted(spec: &SolutionSpec, x: f64, t: f64, shift: f64) -> Result<f64, SolutionError> {
    evaluate_at_xi(spec, spec.xi(x, t), shift)
}

fn evaluate_at_xi(spec: &SolutionSpec, xi: f64, shift: f64) -> Result<f64, SolutionError> {
    let aux = &spec.aux;
    let alpha = spec.alpha;
    let b = spec.b;
    let lambda2 = aux.lambda * aux.lambda;
    let delta = aux.discriminant();
    let coefs = &spec.coefficients;

    let value = match spec.family {
        Family::CanonicalRatio => {
            let w = ratio_dgg(aux, alpha, xi)?;
            coefs.iter().rev().fold(0.0, |acc, a| acc * w + a)
        }
        Family::Rational => {
            let den = aux.weight_a + aux.weight_b * signed_power(xi, alpha.value());
            if den.abs() < POLE_TOLERANCE * aux.weight_a.abs().max(aux.weight_b.abs()) {
                return Err(SolutionError::Pole { xi });
            }
            let q = aux.weight_b / den;
            match spec.equation {
                WaveEquation::Kdv => coefs[0] + 3.0 * b * lambda2 - 12.0 * b * q * q,
                WaveEquation::Mkdv => spec.sigma() * (6.0 * b).sqrt() * q,
            }
        }
        family => {
            let kind = family.kind().expect("named family");
            let phase = aux.half_root() * signed_power(xi, alpha.value()) + shift;
            let f = frac_function(kind, alpha, phase).map_err(|e| match e {
                MlfError::Pole { .. } => SolutionError::Pole { xi },
                other => other.into(),
            })?;
            match spec.equation {
                WaveEquation::Kdv => kdv_literal(family, coefs[0], b, aux.lambda, aux.mu, delta, f),
                WaveEquation::Mkdv => {
                    let amplitude = 0.5 * (6.0 * b).sqrt() * delta.abs().sqrt();
                    let sign = if family == Family::Tan {
                        -spec.sigma()
                    } else {
                        spec.sigma()
                    };
                    sign * amplitude * f
                }
            }
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(SolutionError::Pole { xi })
    }
}

fn kdv_literal(family: Family, a0: f64, b: f64, lambda: f64, mu: f64, delta: f64, f: f64) -> f64 {
    let f2 = f * f;
    match family {
        Family::Tanh | Family::Coth => a0 + 3.0 * b * lambda * lambda - 3.0 * b * delta * f2,
        Family::Tan | Family::Cot => a0 + 3.0 * b * lambda * lambda + 3.0 * b * delta * f2,
        Family::Sech => a0 + 12.0 * b * mu + 3.0 * b * delta * f2,
        Family::Csch => a0 + 12.0 * b * mu - 3.0 * b * delta * f2,
        Family::Sec | Family::Csc => a0 + 12.0 * b * mu + 3.0 * b * delta * f2,
        Family::CanonicalRatio | Family::Rational => unreachable!("handled by the caller"),
    }
}

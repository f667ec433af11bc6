//! Verification harness: exact symbolic residuals, numeric checks of the
//! auxiliary equation at `λ = 0`, classical-limit finite-difference residuals
//! and the `α = 1` phase-shift consistency of the named families.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{SolutionError, SymbolicError, VerifyError};
use crate::grid::GridSpec;
use crate::jumarie::{mlf_eigenfunction_derivative, JumarieOperator, QuadratureSpec};
use crate::mlf::{mittag_leffler_real, signed_power, FractionalOrder};
use crate::solutions::{evaluate_solution, evaluate_solution_shifted, AuxParams, Family, SolutionSpec};
use crate::symbolic::{
    solve_closed_form, Assignment, ClosedFormParams, ExpansionAnsatz, ParamExpr, ReducedOde, SignBranch, Symbol,
    WPolynomial, WaveEquation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Symbolic,
    AuxNumeric,
    ClassicalFd,
    FamilyConsistency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Computed and reported, but not a pass/fail check.
    NotAsserted,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotAsserted => "NOT ASSERTED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerResidual {
    pub power: usize,
    pub residual: ParamExpr,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuxPoint {
    pub xi: f64,
    pub g: f64,
    pub exact_residual: f64,
    pub quadrature_residual: f64,
    pub relative: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExcludedPoint {
    pub t: f64,
    pub x: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Detail {
    /// Nonzero coefficients of the residual w-polynomial.
    Polynomial {
        residuals: Vec<PowerResidual>,
    },
    /// A printed variant next to the re-derived one.
    Erratum {
        printed: String,
        derived: String,
        printed_residuals: Vec<PowerResidual>,
        derived_residuals: Vec<PowerResidual>,
    },
    Points {
        points: Vec<AuxPoint>,
    },
    /// Grid points dropped because a stencil touched a pole.
    Excluded {
        points: Vec<ExcludedPoint>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepResidual {
    pub step: f64,
    pub max_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub name: String,
    pub kind: ReportKind,
    pub status: Status,
    /// For symbolic reports: zero exactly on pass, otherwise the largest
    /// absolute rational coefficient left in the residual.
    pub max_abs: f64,
    pub detail: Detail,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub grids: Vec<StepResidual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

fn nonzero_powers(p: &WPolynomial) -> Vec<PowerResidual> {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(power, c)| PowerResidual {
            power,
            residual: c.clone(),
        })
        .collect()
}

fn largest_coefficient(p: &WPolynomial) -> f64 {
    p.coeffs()
        .iter()
        .flat_map(|c| c.terms().map(|(_, r)| r.abs().to_f64().unwrap_or(f64::INFINITY)))
        .fold(0.0, f64::max)
}

/// Substitute the assignment's ansatz into the reduced ODE and normalize.
pub fn residual_polynomial(ode: &ReducedOde, assignment: &Assignment) -> Result<WPolynomial, SymbolicError> {
    let degree = (0u8..=u8::MAX)
        .take_while(|&k| assignment.values.contains_key(&Symbol::Coef(k)))
        .count();
    let coeffs: Vec<ParamExpr> = (0..degree)
        .map(|k| assignment.values[&Symbol::Coef(k as u8)].clone())
        .collect();
    let ansatz = ExpansionAnsatz::new(coeffs)?;
    for unknown in [Symbol::CAlpha, Symbol::Constant] {
        if !assignment.values.contains_key(&unknown) {
            return Err(SymbolicError::Unbound(unknown));
        }
    }
    Ok(ode
        .substitute(&ansatz)
        .substitute(&assignment.values)
        .reduce(&assignment.relations))
}

/// Exact residual of the reduced ODE under `assignment`; passes iff it is
/// the zero polynomial.
pub fn symbolic_residual(
    name: &str,
    ode: &ReducedOde,
    assignment: &Assignment,
) -> Result<ResidualReport, SymbolicError> {
    let residual = residual_polynomial(ode, assignment)?;
    Ok(ResidualReport {
        name: name.to_string(),
        kind: ReportKind::Symbolic,
        status: Status::from_bool(residual.is_zero()),
        max_abs: largest_coefficient(&residual),
        detail: Detail::Polynomial {
            residuals: nonzero_powers(&residual),
        },
        grids: Vec::new(),
        slope: None,
        note: None,
    })
}

fn symbolic_params() -> ClosedFormParams {
    ClosedFormParams::symbolic()
}

fn sym(s: Symbol) -> ParamExpr {
    ParamExpr::symbol(s)
}

/// `C₁` as commonly printed, with `2μ + λ` in place of `2μ + λ²`.
pub fn kdv_printed_constant() -> ParamExpr {
    let (a0, b, l, m) = (
        sym(Symbol::Coef(0)),
        sym(Symbol::Dispersion),
        sym(Symbol::Lambda),
        sym(Symbol::Mu),
    );
    let c_alpha = -a0.clone() - ParamExpr::int(8) * &b * &m - &b * l.pow(2);
    -(c_alpha * &a0) - ParamExpr::ratio(1, 2) * a0.pow(2)
        + ParamExpr::int(12) * b.pow(2) * &m * (ParamExpr::int(2) * &m + l)
}

/// `cα` as commonly printed for mKdV, `½λ^α b − 2bμ`, with `λ^α` kept opaque.
pub fn mkdv_printed_speed() -> ParamExpr {
    let (b, m) = (sym(Symbol::Dispersion), sym(Symbol::Mu));
    ParamExpr::ratio(1, 2) * sym(Symbol::LambdaPowAlpha) * &b - ParamExpr::int(2) * b * m
}

fn erratum_report(
    name: &str,
    ode: &ReducedOde,
    derived: &Assignment,
    symbol: Symbol,
    printed_value: ParamExpr,
) -> Result<ResidualReport, SymbolicError> {
    let printed = derived.clone().with_value(symbol, printed_value.clone());
    let printed_residual = residual_polynomial(ode, &printed)?;
    let derived_residual = residual_polynomial(ode, derived)?;
    let ok = !printed_residual.is_zero() && derived_residual.is_zero();
    Ok(ResidualReport {
        name: name.to_string(),
        kind: ReportKind::Symbolic,
        status: Status::from_bool(ok),
        max_abs: largest_coefficient(&derived_residual),
        detail: Detail::Erratum {
            printed: format!("{symbol} = {printed_value}"),
            derived: format!("{symbol} = {}", derived.values[&symbol]),
            printed_residuals: nonzero_powers(&printed_residual),
            derived_residuals: nonzero_powers(&derived_residual),
        },
        grids: Vec::new(),
        slope: None,
        note: Some("passes when the printed variant leaves a nonzero residual and the derived one leaves none".into()),
    })
}

/// The two known discrepancies, each with both residuals.
pub fn errata_reports() -> Result<Vec<ResidualReport>, SymbolicError> {
    let kdv = solve_closed_form(WaveEquation::Kdv, &symbolic_params())?.remove(0);
    let mkdv = solve_closed_form(WaveEquation::Mkdv, &symbolic_params())?.remove(0);
    Ok(vec![
        erratum_report(
            "kdv-constant-erratum",
            &ReducedOde::kdv(),
            &kdv,
            Symbol::Constant,
            kdv_printed_constant(),
        )?,
        erratum_report(
            "mkdv-speed-erratum",
            &ReducedOde::mkdv(),
            &mkdv,
            Symbol::CAlpha,
            mkdv_printed_speed(),
        )?,
    ])
}

pub fn run_symbolic_suite() -> Result<Vec<ResidualReport>, VerifyError> {
    let mut reports = Vec::new();
    for a in solve_closed_form(WaveEquation::Kdv, &symbolic_params())? {
        reports.push(symbolic_residual("kdv-closed-form", &ReducedOde::kdv(), &a)?);
    }
    for a in solve_closed_form(WaveEquation::Mkdv, &symbolic_params())? {
        let name = match a.branch {
            Some(SignBranch::Minus) => "mkdv-closed-form-minus",
            _ => "mkdv-closed-form-plus",
        };
        reports.push(symbolic_residual(name, &ReducedOde::mkdv(), &a)?);
    }
    reports.extend(errata_reports()?);
    Ok(reports)
}

/// Tolerance for the quadrature path, relative to `|G|`.
pub const AUX_QUADRATURE_TOLERANCE: f64 = 1e-3;

/// Offset standing in for `ξ = 0` in the inner derivative of the double
/// quadrature, where the Jumarie integral is undefined.
const INNER_ORIGIN: f64 = 1e-12;

/// `D^{2α}G + μG` for `G = A·E_α(ωξ^α) + B·E_α(−ωξ^α)`, `ω = √(−μ)`, at
/// `λ = 0`, by two routes: the eigenfunction rule applied twice, and nested
/// quadrature Jumarie derivatives (classical differences at `α = 1`).
///
/// The eigenfunction route is zero up to the rounding of `ω²`, and exactly
/// zero when `ω²` is representable (for instance `μ = −1` or `μ = −1/4`).
pub fn numeric_auxiliary_residual(
    aux: &AuxParams,
    alpha: FractionalOrder,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<ResidualReport, VerifyError> {
    if aux.lambda != 0.0 {
        return Err(VerifyError::UnsupportedLambda);
    }
    if !(aux.mu < 0.0) {
        return Err(VerifyError::NonNegativeMu(aux.mu));
    }
    let aux = AuxParams::new(aux.lambda, aux.mu, aux.weight_a, aux.weight_b)?;
    let a = alpha.value();
    let omega = (-aux.mu).sqrt();
    let (wa, wb) = (aux.weight_a, aux.weight_b);
    let g = move |xi: f64| -> f64 {
        let xa = signed_power(xi, a);
        let plus = mittag_leffler_real(a, omega * xa).unwrap_or(f64::NAN);
        let minus = mittag_leffler_real(a, -omega * xa).unwrap_or(f64::NAN);
        wa * plus + wb * minus
    };
    let operator = if alpha.is_classical() {
        None
    } else {
        Some(JumarieOperator::new(alpha, *spec)?)
    };

    let evaluated: Vec<Result<AuxPoint, VerifyError>> = points
        .par_iter()
        .map(|&xi| {
            if !(xi > 0.0) {
                return Err(VerifyError::Jumarie(crate::error::JumarieError::Domain(xi)));
            }
            let gv = g(xi);
            let first_plus = mlf_eigenfunction_derivative(omega, alpha, xi)?;
            let first_minus = mlf_eigenfunction_derivative(-omega, alpha, xi)?;
            let second = wa * (omega * first_plus) + wb * (-omega * first_minus);
            let exact_residual = second + aux.mu * gv;

            let second_quadrature = match &operator {
                Some(op) => {
                    let inner = |s: f64| op.derivative(g, s.max(INNER_ORIGIN)).unwrap_or(f64::NAN);
                    op.derivative(inner, xi)?
                }
                None => {
                    let h = 1e-4 * xi.max(1.0);
                    (g(xi + h) - 2.0 * gv + g(xi - h)) / (h * h)
                }
            };
            let quadrature_residual = second_quadrature + aux.mu * gv;
            Ok(AuxPoint {
                xi,
                g: gv,
                exact_residual,
                quadrature_residual,
                relative: quadrature_residual.abs() / gv.abs(),
            })
        })
        .collect();
    let points = evaluated.into_iter().collect::<Result<Vec<_>, _>>()?;

    let max_exact = points.iter().fold(0.0_f64, |m, p| m.max(p.exact_residual.abs()));
    let max_relative = points.iter().fold(0.0_f64, |m, p| m.max(p.relative));
    let exact_ok = points
        .iter()
        .all(|p| p.exact_residual.abs() <= 4.0 * f64::EPSILON * (aux.mu * p.g).abs());
    let quadrature_ok = points.iter().all(|p| p.relative <= AUX_QUADRATURE_TOLERANCE);
    Ok(ResidualReport {
        name: format!("aux-lambda0-alpha{a}-mu{}", aux.mu),
        kind: ReportKind::AuxNumeric,
        status: Status::from_bool(exact_ok && quadrature_ok),
        max_abs: max_exact,
        detail: Detail::Points { points },
        grids: Vec::new(),
        slope: None,
        note: Some(format!(
            "max_abs is the eigenfunction-rule residual; largest quadrature residual relative to |G| is {max_relative:e}"
        )),
    })
}

pub fn run_aux_suite() -> Result<Vec<ResidualReport>, VerifyError> {
    let spec = QuadratureSpec::default();
    let mut reports = Vec::new();
    for alpha in [0.5, 0.8, 1.0] {
        for (mu, wa, wb) in [(-1.0, 1.0, 0.0), (-0.25, 1.0, 0.5)] {
            let aux = AuxParams::new(0.0, mu, wa, wb)?;
            reports.push(numeric_auxiliary_residual(
                &aux,
                FractionalOrder::new(alpha)?,
                &[0.5, 1.0],
                &spec,
            )?);
        }
    }
    Ok(reports)
}

/// Steps used by the classical-limit suite.
pub const CLASSICAL_STEPS: [f64; 4] = [0.08, 0.04, 0.02, 0.01];

/// Residuals at or below this count as exact for every step.
const MACHINE_RESIDUAL: f64 = 1e-9;

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn pde_residual(spec: &SolutionSpec, x: f64, t: f64, h: f64) -> Result<f64, SolutionError> {
    let u = |x: f64, t: f64| evaluate_solution(spec, x, t);
    let u0 = u(x, t)?;
    let (xp, xm) = (u(x + h, t)?, u(x - h, t)?);
    let (xp2, xm2) = (u(x + 2.0 * h, t)?, u(x - 2.0 * h, t)?);
    let (tp, tm) = (u(x, t + h)?, u(x, t - h)?);
    let u_t = (tp - tm) / (2.0 * h);
    let u_x = (xp - xm) / (2.0 * h);
    let u_xxx = (xp2 - 2.0 * xp + 2.0 * xm - xm2) / (2.0 * h * h * h);
    let b = spec.b();
    Ok(match spec.equation() {
        WaveEquation::Kdv => u_t + u0 * u_x + b * u_xxx,
        WaveEquation::Mkdv => u_t - u0 * u0 * u_x + b * u_xxx,
    })
}

/// Central-difference residual of the classical PDE
/// (`u_t + u u_x + b u_xxx` or `u_t − u² u_x + b u_xxx`) at each step, and
/// the log-log slope of the max residual against the step.
///
/// Passes when the slope lies in `[1.7, 2.3]`, or when every residual is at
/// rounding level (exact solutions such as constants).
pub fn classical_limit_residual(
    name: &str,
    spec: &SolutionSpec,
    grid: &GridSpec,
    steps: &[f64],
) -> Result<ResidualReport, VerifyError> {
    if !spec.alpha().is_classical() {
        return Err(VerifyError::NotClassical);
    }
    let points = grid.points();
    let mut grids = Vec::with_capacity(steps.len());
    let mut excluded: Vec<ExcludedPoint> = Vec::new();
    for &h in steps {
        let results: Vec<Result<f64, SolutionError>> =
            points.par_iter().map(|&(t, x)| pde_residual(spec, x, t, h)).collect();
        let mut worst = 0.0_f64;
        for (r, &(t, x)) in results.into_iter().zip(&points) {
            match r {
                Ok(v) => worst = worst.max(v.abs()),
                Err(SolutionError::Pole { .. }) => {
                    let p = ExcludedPoint { t, x };
                    if !excluded.contains(&p) {
                        excluded.push(p);
                    }
                }
                Err(e) => return Err(e.into()),
            }
        }
        grids.push(StepResidual {
            step: h,
            max_abs: worst,
        });
    }
    let exact = grids.iter().all(|g| g.max_abs <= MACHINE_RESIDUAL);
    let slope = if exact || grids.len() < 2 {
        None
    } else {
        let hs: Vec<f64> = grids.iter().map(|g| g.step).collect();
        let rs: Vec<f64> = grids.iter().map(|g| g.max_abs).collect();
        Some(log_log_slope(&hs, &rs))
    };
    let ok = exact || slope.is_some_and(|s| (1.7..=2.3).contains(&s));
    Ok(ResidualReport {
        name: name.to_string(),
        kind: ReportKind::ClassicalFd,
        status: Status::from_bool(ok),
        max_abs: grids.iter().map(|g| g.max_abs).fold(0.0, f64::max),
        detail: Detail::Excluded { points: excluded },
        grids,
        slope,
        note: None,
    })
}

/// The default classical grid: `x ∈ [−5, 5]`, `t ∈ {0, 0.1}`.
pub fn classical_grid() -> GridSpec {
    GridSpec::new(-5.0, 5.0, 101, vec![0.0, 0.1]).expect("valid grid")
}

pub fn run_classical_suite() -> Result<Vec<ResidualReport>, VerifyError> {
    let one = FractionalOrder::ONE;
    let hyperbolic = AuxParams::new(0.0, -1.0, 1.0, 0.0)?;
    let kdv = SolutionSpec::new(
        WaveEquation::Kdv,
        Family::Sech,
        one,
        hyperbolic,
        0.0,
        1.0,
        SignBranch::Plus,
    )?;
    let mkdv = SolutionSpec::new(
        WaveEquation::Mkdv,
        Family::Tanh,
        one,
        hyperbolic,
        0.0,
        1.0,
        SignBranch::Plus,
    )?;
    let constant = SolutionSpec::new(
        WaveEquation::Kdv,
        Family::Rational,
        one,
        AuxParams::new(2.0, 1.0, 1.0, 0.0)?,
        0.5,
        1.0,
        SignBranch::Plus,
    )?;
    let grid = classical_grid();
    Ok(vec![
        classical_limit_residual("classical-kdv-sech", &kdv, &grid, &CLASSICAL_STEPS)?,
        classical_limit_residual("classical-mkdv-tanh", &mkdv, &grid, &CLASSICAL_STEPS)?,
        classical_limit_residual("classical-kdv-constant", &constant, &grid, &CLASSICAL_STEPS)?,
    ])
}

/// Named family paired with the canonical form through a phase shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyPair {
    Tanh,
    Coth,
    Tan,
    Cot,
}

impl FamilyPair {
    pub fn family(self) -> Family {
        match self {
            FamilyPair::Tanh => Family::Tanh,
            FamilyPair::Coth => Family::Coth,
            FamilyPair::Tan => Family::Tan,
            FamilyPair::Cot => Family::Cot,
        }
    }

    /// Phase shift (added to the named family's phase) that matches the
    /// canonical `(A, B)` form classically.
    pub fn shift(self, aux: &AuxParams) -> Result<f64, VerifyError> {
        let (a, b) = (aux.weight_a, aux.weight_b);
        let artanh = |r: f64| {
            if r.is_finite() && r.abs() < 1.0 {
                Ok(r.atanh())
            } else {
                Err(VerifyError::ShiftUndefined(r))
            }
        };
        match self {
            FamilyPair::Tanh => artanh(b / a),
            FamilyPair::Coth => artanh(a / b),
            FamilyPair::Tan => Ok(-(b / a).atan()),
            FamilyPair::Cot => Ok((a / b).atan()),
        }
    }
}

/// Bound on `|u_canonical − u_named| / max(1, |u_canonical|)` at `α = 1`.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-10;

/// Max difference between the canonical evaluation of `canonical` and the
/// shifted named family on the grid. Asserted only at `α = 1`; for other
/// orders the addition formula is formal and the report is informational.
pub fn alpha_one_family_consistency(
    name: &str,
    canonical: &SolutionSpec,
    pair: FamilyPair,
    grid: &GridSpec,
) -> Result<ResidualReport, VerifyError> {
    let shift = pair.shift(canonical.aux())?;
    let named = canonical.with_family(pair.family())?;
    let canonical = canonical.with_family(Family::CanonicalRatio)?;
    let points = grid.points();
    let diffs: Vec<Result<(f64, f64), SolutionError>> = points
        .par_iter()
        .map(|&(t, x)| {
            let u = evaluate_solution(&canonical, x, t)?;
            let v = evaluate_solution_shifted(&named, x, t, shift)?;
            Ok(((u - v).abs(), u.abs().max(1.0)))
        })
        .collect();
    let mut worst = 0.0_f64;
    let mut worst_scaled = 0.0_f64;
    let mut excluded = Vec::new();
    for (d, &(t, x)) in diffs.into_iter().zip(&points) {
        match d {
            Ok((v, scale)) => {
                worst = worst.max(v);
                worst_scaled = worst_scaled.max(v / scale);
            }
            Err(SolutionError::Pole { .. }) => excluded.push(ExcludedPoint { t, x }),
            Err(e) => return Err(e.into()),
        }
    }
    let classical = canonical.alpha().is_classical();
    Ok(ResidualReport {
        name: name.to_string(),
        kind: ReportKind::FamilyConsistency,
        status: if classical {
            Status::from_bool(worst_scaled <= CONSISTENCY_TOLERANCE)
        } else {
            Status::NotAsserted
        },
        max_abs: worst,
        detail: Detail::Excluded { points: excluded },
        grids: Vec::new(),
        slope: None,
        note: Some(if classical {
            format!("largest difference relative to max(1, |u|) is {worst_scaled:e}")
        } else {
            "formal identity, not asserted".to_string()
        }),
    })
}

pub fn run_consistency_suite() -> Result<Vec<ResidualReport>, VerifyError> {
    let grid = GridSpec::new(-3.0, 3.0, 61, vec![0.0, 0.1])?;
    let cases = [
        (
            "consistency-kdv-tanh-unshifted",
            WaveEquation::Kdv,
            1.0,
            0.0,
            -1.0,
            1.0,
            0.0,
            FamilyPair::Tanh,
        ),
        (
            "consistency-kdv-tanh",
            WaveEquation::Kdv,
            1.0,
            0.0,
            -1.0,
            2.0,
            1.0,
            FamilyPair::Tanh,
        ),
        (
            "consistency-kdv-coth",
            WaveEquation::Kdv,
            1.0,
            1.0,
            -0.5,
            1.0,
            2.0,
            FamilyPair::Coth,
        ),
        (
            "consistency-kdv-tan",
            WaveEquation::Kdv,
            1.0,
            0.0,
            1.0,
            2.0,
            1.0,
            FamilyPair::Tan,
        ),
        (
            "consistency-mkdv-cot",
            WaveEquation::Mkdv,
            1.0,
            0.5,
            1.0,
            1.0,
            3.0,
            FamilyPair::Cot,
        ),
        (
            "consistency-mkdv-tanh",
            WaveEquation::Mkdv,
            1.0,
            0.0,
            -1.0,
            2.0,
            1.0,
            FamilyPair::Tanh,
        ),
        (
            "consistency-kdv-tanh-alpha0.7",
            WaveEquation::Kdv,
            0.7,
            0.0,
            -1.0,
            2.0,
            1.0,
            FamilyPair::Tanh,
        ),
    ];
    let mut reports = Vec::new();
    for (name, equation, alpha, lambda, mu, wa, wb, pair) in cases {
        let aux = AuxParams::new(lambda, mu, wa, wb)?;
        let spec = SolutionSpec::new(
            equation,
            Family::CanonicalRatio,
            FractionalOrder::new(alpha)?,
            aux,
            0.0,
            1.0,
            SignBranch::Plus,
        )?;
        reports.push(alpha_one_family_consistency(name, &spec, pair, &grid)?);
    }
    Ok(reports)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Symbolic,
    Aux,
    Classical,
    Consistency,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "symbolic" => Ok(Suite::Symbolic),
            "aux" => Ok(Suite::Aux),
            "classical" => Ok(Suite::Classical),
            "consistency" => Ok(Suite::Consistency),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationSummary {
    pub passed: bool,
    pub counts: BTreeMap<&'static str, usize>,
    pub reports: Vec<ResidualReport>,
}

pub fn run_suite(suite: Suite) -> Result<VerificationSummary, VerifyError> {
    let mut reports = Vec::new();
    if matches!(suite, Suite::Symbolic | Suite::All) {
        reports.extend(run_symbolic_suite()?);
    }
    if matches!(suite, Suite::Aux | Suite::All) {
        reports.extend(run_aux_suite()?);
    }
    if matches!(suite, Suite::Classical | Suite::All) {
        reports.extend(run_classical_suite()?);
    }
    if matches!(suite, Suite::Consistency | Suite::All) {
        reports.extend(run_consistency_suite()?);
    }
    let mut counts = BTreeMap::from([("pass", 0), ("fail", 0), ("not-asserted", 0)]);
    for r in &reports {
        let key = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotAsserted => "not-asserted",
        };
        *counts.get_mut(key).expect("preset key") += 1;
    }
    Ok(VerificationSummary {
        passed: reports.iter().all(ResidualReport::passed),
        counts,
        reports,
    })
}

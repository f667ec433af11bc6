//! Multi-start damped Gauss-Newton for small polynomial coefficient systems.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::expr::{ParamExpr, Symbol};
use super::system::CoefficientSystem;
use crate::error::SymbolicError;

pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonConfig {
    pub max_iterations: usize,
    pub max_halvings: u32,
    pub residual_tolerance: f64,
    pub step_tolerance: f64,
    pub dedup_tolerance: f64,
    /// Roots whose leading ansatz coefficient is below this are dropped: with
    /// `a_n = 0` the system degenerates to a continuum of lower-degree roots.
    pub leading_cutoff: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig {
            max_iterations: 200,
            max_halvings: 30,
            residual_tolerance: 1e-10,
            step_tolerance: 1e-14,
            dedup_tolerance: 1e-8,
            leading_cutoff: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericRoot {
    pub values: BTreeMap<Symbol, f64>,
    pub max_residual: f64,
    pub iterations: usize,
}

/// A polynomial lowered to `Σ c Π x_i^e` over unknown indices.
#[derive(Debug, Clone)]
struct Lowered {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl Lowered {
    fn new(expr: &ParamExpr, index: &BTreeMap<Symbol, usize>) -> Result<Self, SymbolicError> {
        let mut terms = Vec::with_capacity(expr.len());
        for (m, c) in expr.terms() {
            let mut powers = Vec::new();
            for &(s, e) in m.powers() {
                let i = *index.get(&s).ok_or(SymbolicError::Unbound(s))?;
                powers.push((i, e as i32));
            }
            terms.push((c.to_f64().unwrap_or(f64::NAN), powers));
        }
        Ok(Lowered { terms })
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, p)| p.iter().fold(*c, |acc, &(i, e)| acc * x[i].powi(e)))
            .sum()
    }
}

struct Problem {
    residuals: Vec<Lowered>,
    jacobian: Vec<Vec<Lowered>>,
    dim: usize,
}

impl Problem {
    fn residual(&self, x: &[f64]) -> DVector<f64> {
        DVector::from_iterator(self.residuals.len(), self.residuals.iter().map(|r| r.eval(x)))
    }

    fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        DMatrix::from_fn(self.residuals.len(), self.dim, |i, j| self.jacobian[i][j].eval(x))
    }
}

fn max_abs(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0_f64, |m, r| m.max(r.abs()))
}

/// Solve with the default configuration and seed.
pub fn solve_numeric(
    system: &CoefficientSystem,
    fixed: &BTreeMap<Symbol, f64>,
    starts: usize,
) -> Result<Vec<NumericRoot>, SymbolicError> {
    solve_numeric_with(system, fixed, starts, DEFAULT_SEED, &NewtonConfig::default())
}

/// Fix the given symbols, then run damped Gauss-Newton from `starts` seeded
/// random points over the remaining unknowns. Starts run in parallel; the
/// merged roots are sorted, so the result does not depend on scheduling.
///
/// Symbols that are neither fixed nor unknowns give `Unbound`.
pub fn solve_numeric_with(
    system: &CoefficientSystem,
    fixed: &BTreeMap<Symbol, f64>,
    starts: usize,
    seed: u64,
    config: &NewtonConfig,
) -> Result<Vec<NumericRoot>, SymbolicError> {
    let mut binding = BTreeMap::new();
    for (&s, &v) in fixed {
        binding.insert(
            s,
            ParamExpr::from_f64(v).ok_or_else(|| SymbolicError::Parse(v.to_string()))?,
        );
    }
    let equations: Vec<ParamExpr> = system.equations.iter().map(|e| e.substitute(&binding)).collect();
    let free: BTreeSet<Symbol> = equations.iter().flat_map(ParamExpr::symbols).collect();
    if let Some(&s) = free.iter().find(|s| !s.is_unknown()) {
        return Err(SymbolicError::Unbound(s));
    }
    let unknowns: Vec<Symbol> = free.into_iter().collect();
    let index: BTreeMap<Symbol, usize> = unknowns.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let problem = Problem {
        residuals: equations
            .iter()
            .map(|e| Lowered::new(e, &index))
            .collect::<Result<_, _>>()?,
        jacobian: equations
            .iter()
            .map(|e| unknowns.iter().map(|&s| Lowered::new(&e.partial(s), &index)).collect())
            .collect::<Result<_, _>>()?,
        dim: unknowns.len(),
    };

    if unknowns.is_empty() {
        let r = max_abs(&problem.residual(&[]));
        return Ok(if r < config.residual_tolerance {
            vec![NumericRoot {
                values: BTreeMap::new(),
                max_residual: r,
                iterations: 0,
            }]
        } else {
            Vec::new()
        });
    }

    let scale = fixed.values().fold(1.0_f64, |m, v| m.max(v.abs()));
    let radius = 12.0 * scale * scale;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<f64>> = (0..starts)
        .map(|_| (0..problem.dim).map(|_| rng.random_range(-radius..radius)).collect())
        .collect();

    let leading = system.leading.and_then(|s| index.get(&s).copied());
    let mut found: Vec<(Vec<f64>, f64, usize)> = points
        .into_par_iter()
        .filter_map(|x0| newton(&problem, x0, config))
        .filter(|(x, _, _)| leading.is_none_or(|i| x[i].abs() >= config.leading_cutoff))
        .collect();
    found.sort_by(|a, b| {
        a.0.iter()
            .zip(&b.0)
            .map(|(p, q)| p.total_cmp(q))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut roots: Vec<(Vec<f64>, f64, usize)> = Vec::new();
    for candidate in found {
        let duplicate = roots.iter().any(|(kept, _, _)| {
            kept.iter()
                .zip(&candidate.0)
                .all(|(p, q)| (p - q).abs() <= config.dedup_tolerance * p.abs().max(1.0))
        });
        if !duplicate {
            roots.push(candidate);
        }
    }
    Ok(roots
        .into_iter()
        .map(|(x, r, iterations)| NumericRoot {
            values: unknowns.iter().copied().zip(x).collect(),
            max_residual: r,
            iterations,
        })
        .collect())
}

fn newton(problem: &Problem, mut x: Vec<f64>, config: &NewtonConfig) -> Option<(Vec<f64>, f64, usize)> {
    let mut r = problem.residual(&x);
    let mut norm = r.norm();
    for iteration in 1..=config.max_iterations {
        let svd = problem.jacobian(&x).svd(true, true);
        let largest = svd.singular_values.max();
        let smallest = svd.singular_values.min();
        if !(largest.is_finite()) || smallest <= 1e-14 * largest.max(1.0) {
            return None;
        }
        let step = svd.solve(&(-&r), 0.0).ok()?;
        let size = step.amax();
        let scale = x.iter().fold(1.0_f64, |m, v| m.max(v.abs()));

        let mut factor = 1.0;
        let mut accepted = false;
        for _ in 0..=config.max_halvings {
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, d)| a + factor * d).collect();
            let tr = problem.residual(&trial);
            let tn = tr.norm();
            if tn.is_finite() && (tn < norm || tn == 0.0) {
                x = trial;
                r = tr;
                norm = tn;
                accepted = true;
                break;
            }
            factor *= 0.5;
        }
        let max_residual = max_abs(&r);
        let settled = factor * size <= config.step_tolerance * scale;
        if max_residual < config.residual_tolerance && (settled || !accepted) {
            return Some((x, max_residual, iteration));
        }
        if !accepted {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{derive_system, WaveEquation};

    fn fixed(pairs: &[(Symbol, f64)]) -> BTreeMap<Symbol, f64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn kdv_unit_parameters() {
        let sys = derive_system(WaveEquation::Kdv);
        let f = fixed(&[
            (Symbol::Dispersion, 1.0),
            (Symbol::Lambda, 1.0),
            (Symbol::Mu, 0.0),
            (Symbol::Coef(0), 0.0),
        ]);
        let roots = solve_numeric(&sys, &f, 32).unwrap();
        assert_eq!(roots.len(), 1, "{roots:?}");
        let v = &roots[0].values;
        assert!((v[&Symbol::Coef(1)] + 12.0).abs() < 1e-8);
        assert!((v[&Symbol::Coef(2)] + 12.0).abs() < 1e-8);
        assert!((v[&Symbol::CAlpha] + 1.0).abs() < 1e-8);
        assert!(v[&Symbol::Constant].abs() < 1e-8);
        assert!(roots[0].max_residual < 1e-10);
    }

    #[test]
    fn mkdv_two_branches() {
        let sys = derive_system(WaveEquation::Mkdv);
        let f = fixed(&[(Symbol::Dispersion, 6.0), (Symbol::Lambda, 0.0), (Symbol::Mu, -1.0)]);
        let roots = solve_numeric(&sys, &f, 64).unwrap();
        assert_eq!(roots.len(), 2, "{roots:?}");
        for (root, sign) in roots.iter().zip([-1.0, 1.0]) {
            assert!((root.values[&Symbol::Coef(1)] - 6.0 * sign).abs() < 1e-8);
            assert!(root.values[&Symbol::Coef(0)].abs() < 1e-8);
            assert!((root.values[&Symbol::CAlpha] - 12.0).abs() < 1e-8);
        }
    }

    #[test]
    fn no_real_root_is_empty() {
        let sys = derive_system(WaveEquation::Mkdv);
        let f = fixed(&[(Symbol::Dispersion, -1.0), (Symbol::Lambda, 0.0), (Symbol::Mu, -1.0)]);
        assert!(solve_numeric(&sys, &f, 32).unwrap().is_empty());
    }

    #[test]
    fn unfixed_parameter_is_an_error() {
        let sys = derive_system(WaveEquation::Kdv);
        let f = fixed(&[(Symbol::Dispersion, 1.0), (Symbol::Lambda, 1.0)]);
        assert_eq!(solve_numeric(&sys, &f, 4), Err(SymbolicError::Unbound(Symbol::Mu)));
    }

    #[test]
    fn reproducible() {
        let sys = derive_system(WaveEquation::Kdv);
        let f = fixed(&[
            (Symbol::Dispersion, 0.5),
            (Symbol::Lambda, -1.5),
            (Symbol::Mu, 0.25),
            (Symbol::Coef(0), 1.0),
        ]);
        let a = solve_numeric(&sys, &f, 16).unwrap();
        let b = solve_numeric(&sys, &f, 16).unwrap();
        assert_eq!(a, b);
    }
}

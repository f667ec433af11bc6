//! Exact symbolic side of the expansion method: parameter polynomials,
//! w-polynomials, coefficient systems and their solutions.

mod closed_form;
mod expr;
mod numeric;
mod system;
mod wpoly;

pub use closed_form::{
    solve_closed_form, verify_assignment, Assignment, AssignmentCheck, ClosedFormParams, SignBranch,
};
pub use expr::{parse_rational, rational_to_f64, Monomial, ParamExpr, Relations, Rewrite, Symbol};
pub use numeric::{solve_numeric, solve_numeric_with, NewtonConfig, NumericRoot, DEFAULT_SEED};
pub use system::{
    build_coefficient_system, derive_system, expand_ansatz_power, homogeneous_balance, CoefficientSystem,
    ExpansionAnsatz, ReducedOde, WaveEquation,
};
pub use wpoly::{apply_w_derivative, WPolynomial};

/// Exact rational numbers used throughout the symbolic layer.
pub type Rational = num_rational::BigRational;

//! The (D^αG)/G expansion method for Jumarie-type fractional KdV and mKdV
//! equations: special functions, the Jumarie derivative, the symbolic
//! coefficient systems, closed-form solution families and their checks.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod grid;
pub mod jumarie;
pub mod mlf;
pub mod solutions;
pub mod symbolic;
pub mod verify;

pub use error::{GridError, JumarieError, MlfError, SolutionError, SymbolicError, VerifyError};
pub use grid::GridSpec;
pub use jumarie::{
    jumarie_derivative, jumarie_power_rule, mlf_eigenfunction_derivative, JumarieOperator, QuadratureSpec,
};
pub use mlf::{frac_function, mittag_leffler, mittag_leffler_real, signed_power, FracFunctionKind, FractionalOrder};
pub use solutions::{
    aux_solution_g, evaluate_solution, evaluate_solution_shifted, ratio_dgg, wave_speed, AuxCase, AuxParams, Family,
    SolutionSpec,
};
pub use symbolic::{
    apply_w_derivative, build_coefficient_system, derive_system, expand_ansatz_power, homogeneous_balance,
    solve_closed_form, solve_numeric, solve_numeric_with, verify_assignment, Assignment, ClosedFormParams,
    CoefficientSystem, ExpansionAnsatz, NewtonConfig, NumericRoot, ParamExpr, ReducedOde, Relations, SignBranch,
    Symbol, WPolynomial, WaveEquation,
};

use num_complex::Complex64;
use thiserror::Error;

use crate::mlf::FracFunctionKind;
use crate::symbolic::Symbol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MlfError {
    #[error("fractional order {0} outside (0, 1]")]
    InvalidOrder(f64),
    #[error("non-finite Mittag-Leffler argument")]
    NonFiniteArgument,
    #[error(
        "Mittag-Leffler series did not converge within {terms} terms \
         (partial sum {partial_sum}, last term magnitude {last_term:e})"
    )]
    NonConvergence {
        terms: usize,
        partial_sum: Complex64,
        last_term: f64,
    },
    #[error("Mittag-Leffler series overflows at alpha={alpha}, z={z}")]
    Overflow { alpha: f64, z: Complex64 },
    #[error("{kind}_alpha has a pole at phase {phase}")]
    Pole { kind: FracFunctionKind, phase: f64 },
    #[error("imaginary residue {residue:e} at phase {phase} exceeds tolerance")]
    ImaginaryResidue { phase: f64, residue: f64 },
    #[error("unknown function kind `{0}`")]
    UnknownKind(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JumarieError {
    #[error("Jumarie derivative needs x > 0, got {0}")]
    Domain(f64),
    #[error("quadrature derivative needs 0 < alpha < 1, got {0}")]
    Order(f64),
    #[error("invalid quadrature spec: {0}")]
    Spec(&'static str),
    #[error("power rule needs gamma > -1, got {0}")]
    Exponent(f64),
    #[error("gamma function pole at {0}")]
    GammaPole(f64),
    #[error("integrand is not finite at node {node} (value {value})")]
    NonFinite { node: f64, value: f64 },
    #[error(transparent)]
    Mlf(#[from] MlfError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolicError {
    #[error("no nonlinear term: homogeneous balance is undefined")]
    BalanceUndefined,
    #[error("homogeneous balance gives non-integer degree 2/{denominator} for highest power {power}")]
    BalanceFails { power: u32, denominator: u32 },
    #[error("ansatz degree {ansatz} does not match balanced degree {balanced}")]
    DegreeMismatch { ansatz: usize, balanced: usize },
    #[error("ansatz needs at least a_0 and a_1")]
    AnsatzTooShort,
    #[error("ansatz leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("power {0} outside 1..=4")]
    PowerOutOfRange(u32),
    #[error("symbol `{0}` is not bound by the assignment")]
    Unbound(Symbol),
    #[error("no real square root of 6b for b = {0}")]
    Reality(String),
    #[error("dispersion coefficient b must be nonzero")]
    DegenerateDispersion,
    #[error("cannot parse `{0}` as an exact rational")]
    Parse(String),
    #[error("unknown symbol name `{0}`")]
    UnknownSymbol(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolutionError {
    #[error("auxiliary weights A and B cannot both vanish")]
    ZeroWeights,
    #[error("family {family} requires the {required} case, parameters give {actual}")]
    IncompatibleFamily {
        family: &'static str,
        required: &'static str,
        actual: &'static str,
    },
    #[error("family {0} is not defined for this equation")]
    UnsupportedFamily(&'static str),
    #[error("pole of the solution at xi = {xi}")]
    Pole { xi: f64 },
    #[error("non-finite parameter `{0}`")]
    NonFinite(&'static str),
    #[error(transparent)]
    Mlf(#[from] MlfError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid bounds must be finite")]
    NonFinite,
    #[error("need x_min < x_max, got [{x_min}, {x_max}]")]
    EmptyRange { x_min: f64, x_max: f64 },
    #[error("need at least 2 x points, got {0}")]
    TooFewPoints(usize),
    #[error("need at least one time value")]
    NoTimes,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("numeric auxiliary check supports lambda = 0 only: the lambda != 0 solution is a product, exact only under the formal product rule")]
    UnsupportedLambda,
    #[error("auxiliary check needs mu < 0, got {0}")]
    NonNegativeMu(f64),
    #[error("classical-limit checks need alpha = 1")]
    NotClassical,
    #[error("phase shift undefined: |{0}| >= 1, use the other pair")]
    ShiftUndefined(f64),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Jumarie(#[from] JumarieError),
    #[error(transparent)]
    Solution(#[from] SolutionError),
    #[error(transparent)]
    Mlf(#[from] MlfError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

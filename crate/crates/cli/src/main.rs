//! `fracwave`: evaluate fractional special functions, derive and solve the
//! coefficient systems, sample solution families and run the verification
//! suites.
//!
//! Exit codes: 0 success, 1 failed verification, 2 argument error,
//! 3 evaluation error.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use fracwave_core::mlf::{frac_function, mittag_leffler_real, FracFunctionKind, FractionalOrder};
use fracwave_core::solutions::{evaluate_solution, AuxParams, Family, SolutionSpec};
use fracwave_core::symbolic::{
    homogeneous_balance, parse_rational, rational_to_f64, solve_closed_form, solve_numeric_with, Assignment,
    ClosedFormParams, CoefficientSystem, ExpansionAnsatz, NewtonConfig, Rational, ReducedOde, SignBranch, Symbol,
    WaveEquation, DEFAULT_SEED,
};
use fracwave_core::verify::{run_suite, Suite};
use fracwave_core::{GridSpec, SolutionError, SymbolicError};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "fracwave",
    version,
    about = "(D^aG)/G expansion method for fractional KdV and mKdV"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Equation {
    Kdv,
    Mkdv,
}

impl From<Equation> for WaveEquation {
    fn from(e: Equation) -> Self {
        match e {
            Equation::Kdv => WaveEquation::Kdv,
            Equation::Mkdv => WaveEquation::Mkdv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Branch {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Symbolic,
    Aux,
    Classical,
    Consistency,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print E_alpha(z), or a generalized function of phase z with --kind.
    #[command(allow_negative_numbers = true)]
    MlEval {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        z: f64,
        #[arg(long)]
        kind: Option<String>,
    },
    /// Print the symbolic coefficient system of the reduced ODE.
    #[command(allow_negative_numbers = true)]
    Derive {
        #[arg(long, value_enum)]
        equation: Equation,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        f: Option<String>,
        /// Ansatz degree; required when the balance is not an integer.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Print the closed-form coefficient assignments.
    #[command(allow_negative_numbers = true)]
    Solve {
        #[arg(long, value_enum)]
        equation: Equation,
        #[arg(long)]
        b: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        /// KdV only; mKdV derives a0.
        #[arg(long)]
        a0: Option<String>,
        /// Cross-check against the multi-start Newton solver.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 64)]
        starts: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Sample a solution family on a grid.
    #[command(allow_negative_numbers = true)]
    Sample {
        #[arg(long, value_enum)]
        equation: Equation,
        #[arg(long)]
        family: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 0.0)]
        a0: f64,
        #[arg(long = "A", default_value_t = 1.0)]
        weight_a: f64,
        #[arg(long = "B", default_value_t = 0.0)]
        weight_b: f64,
        #[arg(long, value_enum, default_value = "plus")]
        branch: Branch,
        #[arg(long)]
        x_min: f64,
        #[arg(long)]
        x_max: f64,
        #[arg(long)]
        x_count: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run verification suites; exit 0 iff every asserted check passes.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
}

enum Failure {
    Usage(String),
    Evaluation(anyhow::Error),
    Verification(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Evaluation(e)
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Input errors that belong to the arguments rather than to evaluation.
fn classify_solution_error(e: SolutionError) -> Failure {
    match e {
        SolutionError::ZeroWeights
        | SolutionError::IncompatibleFamily { .. }
        | SolutionError::UnsupportedFamily(_)
        | SolutionError::NonFinite(_)
        | SolutionError::Symbolic(SymbolicError::Reality(_) | SymbolicError::DegenerateDispersion) => {
            usage(e.to_string())
        }
        other => Failure::Evaluation(other.into()),
    }
}

fn emit(text: &str) -> Outcome {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .context("writing output")?;
    Ok(())
}

fn emit_json(value: &Value) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).context("serializing output")?;
    text.push('\n');
    emit(&text)
}

fn order(alpha: f64) -> Result<FractionalOrder, Failure> {
    FractionalOrder::new(alpha).map_err(|e| usage(e.to_string()))
}

fn ml_eval(alpha: f64, z: f64, kind: Option<String>) -> Outcome {
    let alpha = order(alpha)?;
    if !z.is_finite() {
        return Err(usage("--z must be finite"));
    }
    let value = match kind {
        None => mittag_leffler_real(alpha.value(), z).map_err(|e| Failure::Evaluation(e.into()))?,
        Some(k) => {
            let kind: FracFunctionKind = k.parse().map_err(|e: fracwave_core::MlfError| usage(e.to_string()))?;
            frac_function(kind, alpha, z).map_err(|e| Failure::Evaluation(e.into()))?
        }
    };
    emit_json(&json!(value))
}

fn rational_arg(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| usage(format!("--{name}: {e}")))
}

fn system_json(system: &CoefficientSystem) -> Value {
    let equations: Vec<Value> = system
        .equations
        .iter()
        .enumerate()
        .map(|(power, e)| json!({ "power": power, "text": e.to_string(), "coefficient": e }))
        .collect();
    json!({
        "degree": system.degree,
        "unknowns": system.unknowns,
        "leading": system.leading,
        "equations": equations,
    })
}

fn derive(
    equation: Equation,
    a: Option<String>,
    h: Option<String>,
    c: Option<String>,
    f: Option<String>,
    degree: Option<usize>,
) -> Outcome {
    let preset = match equation {
        Equation::Kdv => ["1", "0", "0", "0"],
        Equation::Mkdv => ["0", "-1", "0", "0"],
    };
    let pick =
        |name: &str, given: &Option<String>, default: &str| rational_arg(name, given.as_deref().unwrap_or(default));
    let a = pick("a", &a, preset[0])?;
    let h = pick("h", &h, preset[1])?;
    let c = pick("c", &c, preset[2])?;
    let f = pick("f", &f, preset[3])?;
    let ode = ReducedOde::generalized(a.clone(), h.clone(), c.clone(), f.clone());
    let balance = homogeneous_balance(&ode);
    let n = match (degree, &balance) {
        (Some(0), _) => return Err(usage("--degree must be at least 1")),
        (Some(n), _) => n,
        (None, Ok(n)) => *n,
        (None, Err(e)) => return Err(usage(format!("{e}; pass --degree to substitute anyway"))),
    };
    let system = CoefficientSystem::from_substitution(&ode, &ExpansionAnsatz::symbolic(n));
    emit_json(&json!({
        "equation": WaveEquation::from(equation).name(),
        "ode": { "a": a.to_string(), "h": h.to_string(), "c": c.to_string(), "f": f.to_string() },
        "balance": balance.ok(),
        "system": system_json(&system),
    }))
}

fn assignment_json(assignment: &Assignment, values: &BTreeMap<Symbol, f64>) -> Value {
    let entries: serde_json::Map<String, Value> = assignment
        .values
        .iter()
        .filter(|(s, _)| s.is_unknown())
        .map(|(s, e)| (s.name(), json!({ "exact": e.to_string(), "value": values[s] })))
        .collect();
    let relations: Vec<String> = assignment
        .relations
        .rules()
        .iter()
        .map(|r| format!("{}^{} = {}", r.symbol, r.power, r.replacement))
        .collect();
    json!({
        "branch": assignment.branch.map(|b| b.to_string()),
        "values": entries,
        "relations": relations,
    })
}

#[allow(clippy::too_many_arguments)]
fn solve(
    equation: Equation,
    b: String,
    lambda: String,
    mu: String,
    a0: Option<String>,
    numeric: bool,
    starts: usize,
    seed: u64,
) -> Outcome {
    let eq = WaveEquation::from(equation);
    if eq == WaveEquation::Mkdv && a0.is_some() {
        return Err(usage("--a0 applies to kdv only; mkdv derives a0"));
    }
    let br = rational_arg("b", &b)?;
    let lr = rational_arg("lambda", &lambda)?;
    let mr = rational_arg("mu", &mu)?;
    let ar = rational_arg("a0", a0.as_deref().unwrap_or("0"))?;
    let params = ClosedFormParams::numeric(br.clone(), lr.clone(), mr.clone(), ar.clone());
    let assignments = solve_closed_form(eq, &params).map_err(|e| match e {
        SymbolicError::Reality(_) | SymbolicError::DegenerateDispersion => usage(e.to_string()),
        other => Failure::Evaluation(other.into()),
    })?;
    let mut evaluated = Vec::with_capacity(assignments.len());
    for a in &assignments {
        evaluated.push(
            a.evaluate(&BTreeMap::new())
                .map_err(|e| Failure::Evaluation(e.into()))?,
        );
    }

    let mut parameters = serde_json::Map::new();
    parameters.insert("b".into(), json!(br.to_string()));
    parameters.insert("lambda".into(), json!(lr.to_string()));
    parameters.insert("mu".into(), json!(mr.to_string()));
    if eq == WaveEquation::Kdv {
        parameters.insert("a0".into(), json!(ar.to_string()));
    }
    let mut doc = json!({
        "equation": eq.name(),
        "parameters": parameters,
        "assignments": assignments.iter().zip(&evaluated).map(|(a, v)| assignment_json(a, v)).collect::<Vec<_>>(),
    });

    let mut mismatch = None;
    if numeric {
        let mut fixed = BTreeMap::new();
        for (symbol, r) in [(Symbol::Dispersion, &br), (Symbol::Lambda, &lr), (Symbol::Mu, &mr)] {
            fixed.insert(symbol, rational_to_f64(r));
        }
        if eq == WaveEquation::Kdv {
            fixed.insert(Symbol::Coef(0), rational_to_f64(&ar));
        }
        let system = fracwave_core::derive_system(eq);
        let roots = solve_numeric_with(&system, &fixed, starts, seed, &NewtonConfig::default())
            .map_err(|e| Failure::Evaluation(e.into()))?;
        let mut matched_all = !roots.is_empty();
        let mut root_docs = Vec::new();
        for root in &roots {
            let branch = evaluated.iter().position(|v| {
                root.values
                    .iter()
                    .all(|(s, x)| v.get(s).is_some_and(|y| (x - y).abs() <= 1e-8 * y.abs().max(1.0)))
            });
            matched_all &= branch.is_some();
            let values: BTreeMap<String, f64> = root.values.iter().map(|(s, v)| (s.name(), *v)).collect();
            root_docs.push(json!({
                "values": values,
                "max_residual": root.max_residual,
                "matches_assignment": branch,
            }));
        }
        doc["numeric"] = json!({ "starts": starts, "seed": seed, "roots": root_docs, "consistent": matched_all });
        if !matched_all {
            mismatch = Some("numeric roots do not all match a closed-form assignment".to_string());
        }
    }
    emit_json(&doc)?;
    match mismatch {
        Some(msg) => Err(Failure::Verification(msg)),
        None => Ok(()),
    }
}

fn number(v: f64) -> String {
    serde_json::to_string(&v).expect("finite numbers serialize")
}

#[allow(clippy::too_many_arguments)]
fn sample(
    equation: Equation,
    family: String,
    alpha: f64,
    b: f64,
    lambda: f64,
    mu: f64,
    a0: f64,
    weight_a: f64,
    weight_b: f64,
    branch: Branch,
    grid: GridSpec,
    format: Format,
) -> Outcome {
    let family: Family = family.parse().map_err(usage)?;
    let alpha = order(alpha)?;
    let aux = AuxParams::new(lambda, mu, weight_a, weight_b).map_err(classify_solution_error)?;
    let sign = match branch {
        Branch::Plus => SignBranch::Plus,
        Branch::Minus => SignBranch::Minus,
    };
    let spec = SolutionSpec::new(equation.into(), family, alpha, aux, a0, b, sign).map_err(classify_solution_error)?;

    let points = grid.points();
    let values: Vec<Result<Option<f64>, SolutionError>> = points
        .par_iter()
        .map(|&(t, x)| match evaluate_solution(&spec, x, t) {
            Ok(u) => Ok(Some(u)),
            Err(SolutionError::Pole { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect();
    let mut rows = Vec::with_capacity(values.len());
    for (v, &(t, x)) in values.into_iter().zip(&points) {
        rows.push((t, x, v.map_err(|e| Failure::Evaluation(e.into()))?));
    }

    let metadata = json!({
        "equation": spec.equation().name(),
        "family": spec.family().name(),
        "alpha": alpha.value(),
        "b": b,
        "lambda": lambda,
        "mu": mu,
        "a0": spec.a0(),
        "A": weight_a,
        "B": weight_b,
        "branch": spec.sign_branch().map(|s| s.to_string()),
        "case": spec.case().name(),
        "coefficients": spec.coefficients(),
        "c_alpha": spec.c_alpha(),
        "c": spec.c(),
        "grid": grid,
    });
    match format {
        Format::Csv => {
            let mut out = String::new();
            out.push_str("# ");
            out.push_str(&serde_json::to_string(&metadata).context("serializing metadata")?);
            out.push_str("\nt,x,u\n");
            for (t, x, u) in rows {
                let u = u.map(number).unwrap_or_default();
                out.push_str(&format!("{},{},{}\n", number(t), number(x), u));
            }
            emit(&out)
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .into_iter()
                .map(|(t, x, u)| json!({ "t": t, "x": x, "u": u }))
                .collect();
            emit_json(&json!({ "metadata": metadata, "rows": rows }))
        }
    }
}

fn verify(suite: SuiteArg) -> Outcome {
    let suite = match suite {
        SuiteArg::Symbolic => Suite::Symbolic,
        SuiteArg::Aux => Suite::Aux,
        SuiteArg::Classical => Suite::Classical,
        SuiteArg::Consistency => Suite::Consistency,
        SuiteArg::All => Suite::All,
    };
    let summary = run_suite(suite).map_err(|e| Failure::Evaluation(anyhow!(e).context("running verification")))?;
    emit_json(&serde_json::to_value(&summary).context("serializing reports")?)?;
    for r in &summary.reports {
        eprintln!("{:<13} {}", r.status.to_string(), r.name);
    }
    if summary.passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} check(s) failed",
            summary.counts["fail"]
        )))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::MlEval { alpha, z, kind } => ml_eval(alpha, z, kind),
        Command::Derive {
            equation,
            a,
            h,
            c,
            f,
            degree,
        } => derive(equation, a, h, c, f, degree),
        Command::Solve {
            equation,
            b,
            lambda,
            mu,
            a0,
            numeric,
            starts,
            seed,
        } => solve(equation, b, lambda, mu, a0, numeric, starts, seed),
        Command::Sample {
            equation,
            family,
            alpha,
            b,
            lambda,
            mu,
            a0,
            weight_a,
            weight_b,
            branch,
            x_min,
            x_max,
            x_count,
            t,
            format,
        } => {
            let grid = GridSpec::new(x_min, x_max, x_count, t).map_err(|e| usage(e.to_string()))?;
            sample(
                equation, family, alpha, b, lambda, mu, a0, weight_a, weight_b, branch, grid, format,
            )
        }
        Command::Verify { suite } => verify(suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Evaluation(e)) => {
            eprintln!("evaluation error: {e:#}");
            ExitCode::from(3)
        }
    }
}

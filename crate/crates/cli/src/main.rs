//! `hcourant`: compute higher-order Courant/Dorfman brackets and run seeded
//! identity suites from the command line.
//!
//! Exit codes: 0 when everything passed, 1 when a check failed (the report is
//! still printed), 2 on usage, parse or grading errors.

mod report;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hcourant::check::CheckResult;
use hcourant::courant::{
    check_courant_axioms, check_deformation, check_dorfman_axioms, check_gauge_isomorphism, courant_bracket,
    deformed_dorfman, dorfman_bracket,
};
use hcourant::dsl::{self, DslError};
use hcourant::exterior::ext_d;
use hcourant::nambu::{
    check_nambu_leibniz_algebroid, graph_closure_check, graph_closure_courant_check, np_fundamental_check,
    quantifier_scope, NambuCandidate,
};
use hcourant::plectic::{
    check_admissible_lie_algebroid, check_hamiltonian_identities, deformed_graph_check, graph_closure_omega,
    nondegeneracy_check, sample_points, solve_hamiltonian, HamiltonianPair, PlecticCandidate, PlecticError,
};
use hcourant::{Context, Form};

use report::{Params, SuiteReport};

#[derive(Debug, Parser)]
#[command(name = "hcourant", version, about = "Exact higher-order Courant/Dorfman bracket calculus")]
struct Cli {
    /// Chart dimension m.
    #[arg(short = 'm', long = "dim", global = true)]
    dim: Option<usize>,
    /// Bracket order n (sections are X + n-form); inferred from the structure
    /// tensor when omitted.
    #[arg(short = 'n', long = "order", global = true)]
    order: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a bracket of two sections written as "(vector ; form)".
    Bracket {
        kind: BracketKind,
        #[arg(allow_hyphen_values = true)]
        e1: String,
        #[arg(allow_hyphen_values = true)]
        e2: String,
        /// (n+2)-form twisting the Leibniz bracket; required for `deformed`.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
    },
    /// Run an identity suite and report every check.
    Check(CheckArgs),
    /// Solve dξ = i_X ω for X (constant-coefficient ω), or verify a given X.
    SolveHamiltonian {
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        /// Candidate Hamiltonian vector field to verify instead of solving.
        #[arg(long = "with-x", allow_hyphen_values = true)]
        with_x: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BracketKind {
    Courant,
    Dorfman,
    Deformed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    CourantAxioms,
    DorfmanAxioms,
    Deformation,
    Gauge,
    Nambu,
    Plectic,
    Admissible,
}

impl Target {
    fn name(self) -> &'static str {
        match self {
            Target::CourantAxioms => "courant-axioms",
            Target::DorfmanAxioms => "dorfman-axioms",
            Target::Deformation => "deformation",
            Target::Gauge => "gauge",
            Target::Nambu => "nambu",
            Target::Plectic => "plectic",
            Target::Admissible => "admissible",
        }
    }
}

#[derive(Debug, Args)]
struct CheckArgs {
    target: Target,
    /// (n+1)-vector field for `nambu`.
    #[arg(long, allow_hyphen_values = true)]
    pi: Option<String>,
    /// (n+1)-form for `plectic` and `admissible`.
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
    /// (n+2)-form for `deformation` (and optionally `plectic`).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// (n+1)-form for `gauge`.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 25)]
    samples: usize,
    /// Monomial degree bound for sweeps.
    #[arg(long, default_value_t = 2)]
    degree: u32,
    /// Number of sampled points for pointwise rank checks.
    #[arg(long, default_value_t = 5)]
    points: usize,
    /// Emit the JSON report to stdout, or to the given file.
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    json: Option<String>,
}

/// Input-side failure: message for stderr, exit code 2.
struct UsageError(String);

impl From<String> for UsageError {
    fn from(s: String) -> Self {
        UsageError(s)
    }
}

type CmdResult = Result<ExitCode, UsageError>;

fn dsl_error(what: &str, text: &str, e: DslError) -> UsageError {
    UsageError(format!("{what}: {}", e.render(text)))
}

fn context(m: Option<usize>, n: usize) -> Result<Context, UsageError> {
    let m = m.ok_or_else(|| UsageError("--dim/-m is required".into()))?;
    Context::new(m, n).map_err(|e| UsageError(e.to_string()))
}

/// A chart context just for reading tensors before `n` is known.
fn probe_context(m: Option<usize>) -> Result<Context, UsageError> {
    context(m, 1)
}

/// Resolves `n` from the flag or from a structure tensor of degree `n + shift`.
fn resolve_order(flag: Option<usize>, degree: usize, shift: usize, what: &str) -> Result<usize, UsageError> {
    match flag {
        Some(n) if n + shift != degree => Err(UsageError(format!(
            "{what} has degree {degree}, but --order {n} needs degree {}",
            n + shift
        ))),
        Some(n) => Ok(n),
        None if degree > shift => Ok(degree - shift),
        None => Err(UsageError(format!(
            "cannot infer the order from {what} of degree {degree}; pass --order"
        ))),
    }
}

fn read_form(text: &str, what: &str, ctx: Context, degree: usize) -> Result<Form, UsageError> {
    dsl::parse_form(text, ctx, degree).map_err(|e| dsl_error(what, text, e))
}

fn require<'a>(value: &'a Option<String>, flag: &str, target: Target) -> Result<&'a str, UsageError> {
    value
        .as_deref()
        .ok_or_else(|| UsageError(format!("check {} requires --{flag}", target.name())))
}

/// Reads a form whose degree fixes `n` (`degree = n + shift`), returning the
/// context and the form.
fn structure_form(cli: &Cli, text: &str, what: &str, shift: usize) -> Result<(Context, Form), UsageError> {
    let probe = probe_context(cli.dim)?;
    let form = dsl::parse_form_any(text, probe).map_err(|e| dsl_error(what, text, e))?;
    let degree = if form.is_zero() { cli.order.map_or(0, |n| n + shift) } else { form.degree() };
    let n = resolve_order(cli.order, degree, shift, what)?;
    let ctx = context(cli.dim, n)?;
    Ok((ctx, read_form(text, what, ctx, n + shift)?))
}

fn cmd_bracket(cli: &Cli, kind: BracketKind, e1: &str, e2: &str, theta: Option<&str>) -> CmdResult {
    let n = cli.order.ok_or_else(|| UsageError("bracket requires --order/-n".into()))?;
    let ctx = context(cli.dim, n)?;
    let a = dsl::parse_section(e1, ctx).map_err(|e| dsl_error("e1", e1, e))?;
    let b = dsl::parse_section(e2, ctx).map_err(|e| dsl_error("e2", e2, e))?;
    let result = match kind {
        BracketKind::Courant => courant_bracket(&a, &b),
        BracketKind::Dorfman => dorfman_bracket(&a, &b),
        BracketKind::Deformed => {
            let text = theta.ok_or_else(|| UsageError("bracket deformed requires --theta".into()))?;
            let theta = read_form(text, "theta", ctx, n + 2)?;
            deformed_dorfman(&a, &b, &theta)
        }
    }
    .map_err(|e| UsageError(e.to_string()))?;
    println!("{result}");
    Ok(ExitCode::SUCCESS)
}

const SAMPLED_SCOPE: &str = "seeded random samples with polynomial coefficients of degree <= 2, \
                             plus exhaustive constant-basis sweeps where a check says so; exact rational arithmetic";

fn cmd_check(cli: &Cli, args: &CheckArgs) -> CmdResult {
    let target = args.target;
    if args.samples == 0 {
        return Err(UsageError("--samples must be at least 1".into()));
    }
    let (seed, samples) = (args.seed, args.samples);
    let err = |e: &dyn std::fmt::Display| UsageError(e.to_string());
    let mut scope = SAMPLED_SCOPE.to_string();
    let (ctx, checks): (Context, Vec<CheckResult>) = match target {
        Target::CourantAxioms | Target::DorfmanAxioms => {
            let n = cli.order.ok_or_else(|| UsageError(format!("check {} requires --order/-n", target.name())))?;
            let ctx = context(cli.dim, n)?;
            let checks = if target == Target::CourantAxioms {
                check_courant_axioms(ctx, seed, samples)
            } else {
                check_dorfman_axioms(ctx, seed, samples)
            };
            (ctx, checks.map_err(|e| err(&e))?)
        }
        Target::Deformation => {
            let (ctx, theta) = structure_form(cli, require(&args.theta, "theta", target)?, "theta", 2)?;
            (ctx, check_deformation(ctx, &theta, seed, samples).map_err(|e| err(&e))?)
        }
        Target::Gauge => {
            let (ctx, phi) = structure_form(cli, require(&args.phi, "phi", target)?, "phi", 1)?;
            (ctx, check_gauge_isomorphism(ctx, &phi, seed, samples).map_err(|e| err(&e))?)
        }
        Target::Nambu => {
            let text = require(&args.pi, "pi", target)?;
            let probe = probe_context(cli.dim)?;
            let pi = dsl::parse_multivec_any(text, probe).map_err(|e| dsl_error("pi", text, e))?;
            let degree = if pi.is_zero() { cli.order.map_or(0, |n| n + 1) } else { pi.degree() };
            let ctx = context(cli.dim, resolve_order(cli.order, degree, 1, "pi")?)?;
            let c = NambuCandidate::new(ctx, pi).map_err(|e| err(&e))?;
            scope = format!("{}; other checks: {SAMPLED_SCOPE}", quantifier_scope(args.degree));
            let d = args.degree;
            let fundamental = np_fundamental_check(&c, d).map_err(|e| err(&e))?;
            let nambu_poisson = fundamental.passed;
            let mut checks = vec![
                fundamental,
                graph_closure_check(&c, seed, samples, d).map_err(|e| err(&e))?,
                graph_closure_courant_check(&c, seed, samples, d).map_err(|e| err(&e))?,
            ];
            if nambu_poisson {
                checks.extend(check_nambu_leibniz_algebroid(&c, seed, samples).map_err(|e| err(&e))?);
            }
            (ctx, checks)
        }
        Target::Plectic | Target::Admissible => {
            let (ctx, omega) = structure_form(cli, require(&args.omega, "omega", target)?, "omega", 1)?;
            let c = PlecticCandidate::new(ctx, omega).map_err(|e| err(&e))?;
            let checks = if target == Target::Plectic {
                if args.points == 0 {
                    return Err(UsageError("--points must be at least 1".into()));
                }
                let points = sample_points(ctx.m(), seed, args.points);
                let mut checks = vec![nondegeneracy_check(&c, &points).map_err(|e| err(&e))?];
                checks.extend(graph_closure_omega(&c, seed, samples).map_err(|e| err(&e))?);
                if let Some(text) = &args.theta {
                    let theta = read_form(text, "theta", ctx, ctx.n() + 2)?;
                    checks.extend(deformed_graph_check(&c, &theta, seed, samples).map_err(|e| err(&e))?);
                }
                checks
            } else {
                admissible_checks(&c, seed, samples)?
            };
            (ctx, checks)
        }
    };
    let params = Params {
        samples,
        degree: args.degree,
        points: args.points,
    };
    let report = SuiteReport::new(target.name(), ctx.m(), ctx.n(), seed, params, scope, checks);
    match args.json.as_deref() {
        Some("-") => print!("{}", report.to_json()),
        Some(path) => {
            fs::write(path, report.to_json()).map_err(|e| UsageError(format!("cannot write {path}: {e}")))?;
            print!("{}", report.render());
        }
        None => print!("{}", report.render()),
    }
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// The algebroid suite presupposes `dω = 0`; a non-closed `ω` is reported as
/// a failed closedness check rather than run.
fn admissible_checks(c: &PlecticCandidate, seed: u64, samples: usize) -> Result<Vec<CheckResult>, UsageError> {
    let d = ext_d(c.omega());
    let closed = CheckResult::verdict(
        "omega-closed",
        "d omega = 0",
        (!d.is_zero()).then(|| hcourant::check::Failure::new(vec![c.omega().to_string()], &d)),
    );
    if !closed.passed {
        return Ok(vec![closed]);
    }
    let mut checks = vec![closed];
    checks.extend(check_admissible_lie_algebroid(c, seed, samples).map_err(|e| UsageError(e.to_string()))?);
    if c.omega().is_constant() {
        checks.extend(check_hamiltonian_identities(c, seed, samples).map_err(|e| UsageError(e.to_string()))?);
    }
    Ok(checks)
}

fn cmd_solve_hamiltonian(cli: &Cli, omega: &str, xi: &str, with_x: Option<&str>) -> CmdResult {
    let (ctx, omega) = structure_form(cli, omega, "omega", 1)?;
    let c = PlecticCandidate::new(ctx, omega).map_err(|e| UsageError(e.to_string()))?;
    let xi_form = dsl::parse_form_any(xi, ctx).map_err(|e| dsl_error("xi", xi, e))?;
    let n = ctx.n();
    if !xi_form.is_zero() && xi_form.degree() != n - 1 {
        // i_X ω is an n-form, so dξ of any other degree matches only when it vanishes
        let answer = if ext_d(&xi_form).is_zero() { "0" } else { "not-hamiltonian" };
        println!("{answer}");
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(text) = with_x {
        let x = dsl::parse_multivec(text, ctx, 1).map_err(|e| dsl_error("with-x", text, e))?;
        return match HamiltonianPair::new(&c, xi_form, x) {
            Ok(pair) => {
                println!("{}", pair.x_xi());
                Ok(ExitCode::SUCCESS)
            }
            Err(e) => {
                println!("not-hamiltonian");
                eprintln!("{e}");
                Ok(ExitCode::from(1))
            }
        };
    }
    match solve_hamiltonian(&c, &xi_form) {
        Ok(pair) => println!("{}", pair.x_xi()),
        Err(PlecticError::NotHamiltonian { .. }) => println!("not-hamiltonian"),
        Err(PlecticError::Unsupported(msg)) => {
            return Err(UsageError(format!("{msg}; pass --with-x to verify a candidate X")))
        }
        Err(e) => return Err(UsageError(e.to_string())),
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Bracket { kind, e1, e2, theta } => cmd_bracket(cli, *kind, e1, e2, theta.as_deref()),
        Command::Check(args) => cmd_check(cli, args),
        Command::SolveHamiltonian { omega, xi, with_x } => cmd_solve_hamiltonian(cli, omega, xi, with_x.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn order_resolution() {
        assert_eq!(resolve_order(None, 3, 1, "pi").ok(), Some(2));
        assert!(resolve_order(Some(1), 3, 1, "pi").is_err());
        assert!(resolve_order(None, 1, 1, "pi").is_err());
        assert_eq!(resolve_order(Some(2), 4, 2, "theta").ok(), Some(2));
    }
}

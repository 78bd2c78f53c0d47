//! `cstar-ineq`: command-line front end for the operator inequality library.

mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use cstar_ineq::convexity::{needs_nonnegative_domain, supporting_line, ScalarFunction};
use cstar_ineq::inequalities::{
    check_commutative_loewner, check_hilbert_mccarty, check_loewner_mccarty, check_mond_pecaric_state,
    check_norm_mccarty, check_state_mccarty, evaluate_reference_instance, reference_instances,
    reproduce_paper_counterexamples, search_counterexamples, Family, InequalityReport, SearchConfig,
    SearchFamily,
};
use cstar_ineq::linalg::hermitian_eig;
use cstar_ineq::localization::Localization;
use cstar_ineq::module::{ModuleElement, ModuleOperator};
use cstar_ineq::sampling::EntryDistribution;
use cstar_ineq::state::{make_state, DiagonalAlgebraElement, State};
use cstar_ineq::suites::{all_suites, DEFAULT_SEED};
use cstar_ineq::ComplexMatrix;
use serde_json::json;

use report::{to_value, OutputFormat, RunReport};

const TOLERANCE_ENV: &str = "CSTAR_INEQ_TOL";

#[derive(Debug, Parser)]
#[command(name = "cstar-ineq", version, about = "Verify and search convex operator inequalities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    out: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Recompute the two reference 2x2 counterexamples.
    VerifyPaper,
    /// Evaluate one inequality family on given data.
    Check {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        t: PathBuf,
        #[arg(long)]
        x: PathBuf,
        /// Exponent; not used by the mond-pecaric family.
        #[arg(long)]
        r: Option<f64>,
        /// Density matrix; defaults to the maximally mixed state.
        #[arg(long)]
        rho: Option<PathBuf>,
        /// Convex function label for the mond-pecaric family.
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Random search for violations of the Löwner-order inequality.
    Search {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        r_min: f64,
        #[arg(long)]
        r_max: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "integer-small")]
        dist: EntryDistribution,
        #[arg(long, default_value = "loewner-r>1")]
        family: SearchFamily,
    },
    /// Localize a module at a state and check that t transports.
    Gns {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho: PathBuf,
        #[arg(long)]
        t: PathBuf,
        #[arg(long, default_value = "id")]
        f: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Affine minorant of a convex function touching it near x0.
    SupportingLine {
        #[arg(long)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Run every seeded property suite.
    Suite {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Tolerance from `--tol`, else from the environment.
fn tolerance_override(flag: Option<f64>) -> Result<Option<f64>> {
    let tol = match (flag, std::env::var(TOLERANCE_ENV)) {
        (Some(t), _) => Some(t),
        (None, Ok(raw)) => Some(
            raw.trim()
                .parse::<f64>()
                .with_context(|| format!("{TOLERANCE_ENV}={raw:?} is not a decimal number"))?,
        ),
        (None, Err(_)) => None,
    };
    match tol {
        Some(t) if !(t.is_finite() && t >= 0.0) => bail!("tolerance must be a nonnegative number, got {t}"),
        other => Ok(other),
    }
}

fn load_state(path: Option<&Path>, n: usize) -> Result<State> {
    match path {
        Some(p) => {
            let rho = make_state(input::read_matrix(p)?)?;
            if rho.dim() != n {
                bail!("state acts on M_{} but the data needs M_{n}", rho.dim());
            }
            Ok(rho)
        }
        None => Ok(State::maximally_mixed(n)),
    }
}

fn diagonal(m: &ComplexMatrix) -> Result<DiagonalAlgebraElement> {
    if m.rows() == 1 || m.cols() == 1 {
        Ok(DiagonalAlgebraElement::new(input::as_vector(m)?))
    } else {
        Ok(DiagonalAlgebraElement::from_matrix(m)?)
    }
}

/// `label` on the smallest interval holding the spectrum of `t`.
fn function_on_spectrum(label: &str, t: &ComplexMatrix) -> Result<ScalarFunction> {
    let d = hermitian_eig(&t.hermitian_part())?;
    let (mut a, b) = (d.min_eigenvalue(), d.max_eigenvalue());
    if needs_nonnegative_domain(label) {
        a = a.max(0.0);
    }
    Ok(ScalarFunction::from_label(label, a, b.max(a))?)
}

fn require_r(r: Option<f64>, family: Family) -> Result<f64> {
    r.with_context(|| format!("--r is required for {family}"))
}

fn run_check(
    family: Family,
    t_path: &Path,
    x_path: &Path,
    r: Option<f64>,
    rho: Option<&Path>,
    f: Option<&str>,
    tol: Option<f64>,
) -> Result<RunReport> {
    let t = input::read_matrix(t_path)?;
    let x = input::read_matrix(x_path)?;
    let report: InequalityReport = match family {
        Family::HilbertMccarty => check_hilbert_mccarty(&t, &input::as_vector(&x)?, require_r(r, family)?)?,
        Family::CommutativeLoewner => check_commutative_loewner(&diagonal(&t)?, &diagonal(&x)?, require_r(r, family)?)?,
        Family::MondPecaricState => {
            let label = f.context("--f is required for mond-pecaric-state")?;
            let rho = load_state(rho, x.cols())?;
            let func = function_on_spectrum(label, &t)?;
            check_mond_pecaric_state(&ModuleOperator::new(t.clone())?, &rho, &ModuleElement::new(x.clone()), &func)?
        }
        Family::StateMccarty => {
            let rho = load_state(rho, x.cols())?;
            check_state_mccarty(&ModuleOperator::new(t.clone())?, &rho, &ModuleElement::new(x.clone()), require_r(r, family)?)?
        }
        Family::NormMccarty => {
            check_norm_mccarty(&ModuleOperator::new(t.clone())?, &ModuleElement::new(x.clone()), require_r(r, family)?)?
        }
        Family::LoewnerMccarty => {
            check_loewner_mccarty(&ModuleOperator::new(t.clone())?, &ModuleElement::new(x.clone()), require_r(r, family)?)?
        }
    };
    let report = match tolerance_override(tol)? {
        Some(tol) => report.with_tolerance(tol),
        None => report,
    };
    let inputs = json!({
        "family": family,
        "t": t,
        "x": x,
        "r": r,
        "rho": rho.map(|p| p.display().to_string()),
        "f": f,
        "tol": tol,
    });
    let code = if report.holds { 0 } else { 1 };
    Ok(RunReport::new("check", inputs, vec![to_value(&report)], code))
}

fn run(cli: &Cli) -> Result<(RunReport, Option<String>)> {
    let report = match &cli.command {
        Command::VerifyPaper => {
            let mut reports = Vec::new();
            let mut layouts = String::new();
            for inst in reference_instances() {
                let rep = evaluate_reference_instance(&inst)?;
                layouts.push_str(&rep.layout());
                layouts.push('\n');
                reports.push(to_value(&rep));
            }
            let (code, diagnostic) = match reproduce_paper_counterexamples() {
                Ok(_) => (0, None),
                Err(e) => (2, Some(e.to_string())),
            };
            let report = RunReport::new("verify-paper", json!({}), reports, code);
            if cli.out == OutputFormat::Text {
                print!("{layouts}");
                println!("exit_code: {code}");
            } else {
                print!("{}", report.render(cli.out));
            }
            return Ok((report, diagnostic));
        }
        Command::Check { family, t, x, r, rho, f, tol } => {
            run_check(*family, t, x, *r, rho.as_deref(), f.as_deref(), *tol)?
        }
        Command::Search { dim, r_min, r_max, trials, seed, dist, family } => {
            let cfg = SearchConfig {
                dim: *dim,
                r_range: (*r_min, *r_max),
                trials: *trials,
                seed: *seed,
                entry_distribution: *dist,
                tolerance: tolerance_override(None)?,
            };
            let findings = search_counterexamples(&cfg, *family)?;
            let inputs = json!({ "config": cfg, "family": family });
            let summary = json!({ "findings": findings.len() });
            let mut reports = vec![summary];
            reports.extend(findings.iter().map(to_value));
            let code = if findings.is_empty() { 0 } else { 1 };
            RunReport::new("search", inputs, reports, code)
        }
        Command::Gns { m, n, rho, t, f, samples, seed } => {
            let rho_state = load_state(Some(rho), *n)?;
            let t_mat = input::read_matrix(t)?;
            if t_mat.rows() != *m {
                bail!("t is {}x{} but the module has {m} rows", t_mat.rows(), t_mat.cols());
            }
            let func = function_on_spectrum(f, &t_mat)?;
            let op = ModuleOperator::new(t_mat.clone())?;
            let loc = Localization::build(*m, *n, &rho_state)?;
            let transport = loc.verify_transport(&op, &func, *samples, *seed)?;
            let inputs = json!({ "m": m, "n": n, "rho": rho_state.density(), "t": t_mat, "f": f, "samples": samples, "seed": seed });
            let summary = json!({ "dim_quotient": loc.dim_quotient(), "transport": transport });
            let code = if transport.passes { 0 } else { 1 };
            RunReport::new("gns", inputs, vec![summary], code)
        }
        Command::SupportingLine { f, a, b, x0, eps } => {
            let func = ScalarFunction::from_label(f, *a, *b)?;
            let line = supporting_line(&func, *x0, *eps)?;
            let check = line.verify(&func, *x0, *eps);
            let inputs = json!({ "f": f, "a": a, "b": b, "x0": x0, "eps": eps });
            let code = if check.holds() { 0 } else { 1 };
            RunReport::new("supporting-line", inputs, vec![json!({ "line": line, "check": check })], code)
        }
        Command::Suite { seed } => {
            let results = all_suites(*seed);
            let code = if results.iter().all(|r| r.passed) { 0 } else { 1 };
            RunReport::new("suite", json!({ "seed": seed }), results.iter().map(to_value).collect(), code)
        }
    };
    print!("{}", report.render(cli.out));
    Ok((report, None))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok((report, diagnostic)) => {
            if let Some(d) = diagnostic {
                eprintln!("error: {d}");
            }
            ExitCode::from(report.exit_code)
        }
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(2)
        }
    }
}

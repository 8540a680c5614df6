//! Command-line front end. Every path writes one JSON document to stdout;
//! diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 validation or I/O error, 2 solver did not
//! converge, 3 a checked invariant was violated.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::approx::{
    blend_check, certificate, distance_to_subspace, oracle_solve, set_distance, solve,
    uniqueness_probe, verify_certificate, SimultaneousProblem, SolverConfig, SubspaceBasis,
};
use crate::element::Element;
use crate::error::Error;
use crate::sequences::{
    cauchy_series, convergence_profile, norm_limit_check, ProbePair, SequencePrefix,
};
use crate::spaces::{check_axioms, check_dependent_triples, Space};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

const DEFAULT_AXIOM_SAMPLES: usize = 1000;
const DEFAULT_AXIOM_TOL: f64 = 1e-9;
const DEFAULT_CERT_PROBES: usize = 1000;
const DEFAULT_UNIQUENESS_RESTARTS: usize = 16;
const DEFAULT_BLEND_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "twonorm", version, about = "Best simultaneous approximation in linear 2-normed spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Randomized check of the 2-norm axioms and the dependent-triple identity.
    CheckAxioms(Invocation),
    /// Distance from a point (x0) or a finite set (a_set) to a subspace.
    Distance(Invocation),
    /// Best simultaneous approximation; optional grid oracle.
    Solve(Invocation),
    /// Dual certificate for the distance to a subspace (Gram space).
    Certificate(Invocation),
    /// Convex-combination check between two optimizers.
    Blend(Invocation),
    /// Multi-start uniqueness probe.
    Uniqueness(Invocation),
    /// Cauchy, convergence and norm-limit diagnostics for a sequence prefix.
    Sequence(Invocation),
}

#[derive(Debug, Args)]
struct Invocation {
    /// Input JSON file.
    input: PathBuf,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Debug, Args, Default, Clone)]
struct Overrides {
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long = "max-iters")]
    max_iters: Option<usize>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    resolution: Option<usize>,
}

impl Overrides {
    fn apply(&self, cfg: &mut SolverConfig) {
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.tol {
            cfg.tol = v;
        }
        if let Some(v) = self.restarts {
            cfg.restarts = v;
        }
        if let Some(v) = self.max_iters {
            cfg.max_iters = v;
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: Option<String>,
}

impl Outcome {
    fn report(code: i32, value: &impl Serialize) -> Self {
        match crate::json::to_string(value) {
            Ok(stdout) => Outcome {
                code,
                stdout,
                stderr: None,
            },
            Err(e) => Outcome::failure(format!("serializing report: {e}")),
        }
    }

    fn failure(message: String) -> Self {
        Outcome {
            code: EXIT_INVALID,
            stdout: json!({ "error": message }).to_string(),
            stderr: Some(format!("error: {message}")),
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::failure(e.to_string())
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let args = argv.iter().map(|s| s.as_ref());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: json!({ "usage": text }).to_string(),
                    stderr: None,
                },
                _ => Outcome::failure(text.trim().to_string()),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) | Err(outcome) => outcome,
    }
}

type Step<T> = std::result::Result<T, Outcome>;

fn dispatch(command: Command) -> Step<Outcome> {
    match command {
        Command::CheckAxioms(inv) => run_check_axioms(&inv),
        Command::Distance(inv) => run_distance(&inv),
        Command::Solve(inv) => run_solve(&inv),
        Command::Certificate(inv) => run_certificate(&inv),
        Command::Blend(inv) => run_blend(&inv),
        Command::Uniqueness(inv) => run_uniqueness(&inv),
        Command::Sequence(inv) => run_sequence(&inv),
    }
}

fn load<T: DeserializeOwned>(path: &Path) -> Step<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::failure(format!("reading {}: {e}", path.display())))?;
    parse(&text).map_err(|msg| Outcome::failure(format!("{}: {msg}", path.display())))
}

fn parse<T: DeserializeOwned>(text: &str) -> std::result::Result<T, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            e.inner().to_string()
        } else {
            format!("field `{path}`: {}", e.inner())
        }
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AxiomsFile {
    space: Space,
    samples: Option<usize>,
    seed: Option<u64>,
    tol: Option<f64>,
}

fn run_check_axioms(inv: &Invocation) -> Step<Outcome> {
    let value: Value = load(&inv.input)?;
    let file: AxiomsFile = if value.get("space").is_some() {
        parse(&value.to_string())
    } else {
        parse::<Space>(&value.to_string()).map(|space| AxiomsFile {
            space,
            samples: None,
            seed: None,
            tol: None,
        })
    }
    .map_err(|msg| Outcome::failure(format!("{}: {msg}", inv.input.display())))?;

    let o = &inv.overrides;
    let samples = o.samples.or(file.samples).unwrap_or(DEFAULT_AXIOM_SAMPLES);
    let seed = o.seed.or(file.seed).unwrap_or(0);
    let tol = o.tol.or(file.tol).unwrap_or(DEFAULT_AXIOM_TOL);
    let report = check_axioms(&file.space, samples, seed, tol)?;
    let triples = check_dependent_triples(&file.space, samples, seed, tol);
    let passed = report.passed() && triples.failures.is_empty();
    let code = if passed { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Outcome::report(
        code,
        &json!({ "passed": passed, "axioms": report, "dependent_triples": triples }),
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DistanceFile {
    space: Space,
    x0: Option<Element>,
    a_set: Option<Vec<Element>>,
    #[serde(default)]
    w_basis: SubspaceBasis,
    b: Element,
    #[serde(default)]
    solver: SolverConfig,
}

fn run_distance(inv: &Invocation) -> Step<Outcome> {
    let mut file: DistanceFile = load(&inv.input)?;
    inv.overrides.apply(&mut file.solver);
    let out = match (&file.x0, &file.a_set) {
        (Some(x0), None) => {
            let (delta, w_star) =
                distance_to_subspace(&file.space, x0, &file.w_basis, &file.b, &file.solver)?;
            json!({ "delta": delta, "w_star": w_star })
        }
        (None, Some(a_set)) => {
            let d = set_distance(&file.space, a_set, &file.w_basis, &file.b, &file.solver)?;
            json!({ "set_distance": d })
        }
        _ => {
            return Err(Outcome::failure(
                "distance input needs exactly one of `x0` or `a_set`".into(),
            ))
        }
    };
    Ok(Outcome::report(EXIT_OK, &out))
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct OracleSettings {
    radius: Option<f64>,
    resolution: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SolveFile {
    space: Space,
    targets: Vec<Element>,
    #[serde(default)]
    g_basis: SubspaceBasis,
    b: Element,
    #[serde(default)]
    solver: SolverConfig,
    oracle: Option<OracleSettings>,
}

impl SolveFile {
    fn into_problem(self, o: &Overrides) -> (SimultaneousProblem, Option<OracleSettings>) {
        let mut solver = self.solver;
        o.apply(&mut solver);
        let problem = SimultaneousProblem {
            space: self.space,
            targets: self.targets,
            g_basis: self.g_basis,
            b: self.b,
            solver,
        };
        (problem, self.oracle)
    }
}

fn run_solve(inv: &Invocation) -> Step<Outcome> {
    let file: SolveFile = load(&inv.input)?;
    let o = &inv.overrides;
    let (problem, oracle) = file.into_problem(o);
    let report = solve(&problem)?;

    let oracle = match (oracle, o.radius, o.resolution) {
        (None, None, None) => None,
        (settings, radius, resolution) => {
            let settings = settings.unwrap_or_default();
            let radius = radius.or(settings.radius).unwrap_or_else(|| default_radius(&problem));
            let resolution = resolution.or(settings.resolution).unwrap_or(100);
            Some(oracle_solve(&problem, radius, resolution)?)
        }
    };

    let code = if report.converged { EXIT_OK } else { EXIT_NOT_CONVERGED };
    let mut out = serde_json::to_value(&report).expect("report serializes");
    if let Some(or) = oracle {
        out["oracle"] = serde_json::to_value(or).expect("oracle serializes");
    }
    if code == EXIT_NOT_CONVERGED {
        let mut outcome = Outcome::report(code, &out);
        outcome.stderr = Some("warning: iteration cap reached before the stall criterion".into());
        return Ok(outcome);
    }
    Ok(Outcome::report(code, &out))
}

fn default_radius(problem: &SimultaneousProblem) -> f64 {
    let m = problem
        .targets
        .iter()
        .map(Element::max_abs)
        .fold(0.0_f64, f64::max);
    (2.0 * m).max(1.0)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    space: Space,
    x0: Element,
    #[serde(default)]
    w_basis: SubspaceBasis,
    b: Element,
    samples: Option<usize>,
    seed: Option<u64>,
}

fn run_certificate(inv: &Invocation) -> Step<Outcome> {
    let file: CertificateFile = load(&inv.input)?;
    let o = &inv.overrides;
    let cert = certificate(&file.space, &file.x0, &file.w_basis, &file.b)?;
    let probes = o.samples.or(file.samples).unwrap_or(DEFAULT_CERT_PROBES);
    let seed = o.seed.or(file.seed).unwrap_or(0);
    let check = verify_certificate(&file.space, &cert, &file.x0, &file.w_basis, &file.b, probes, seed)?;
    let passed = check.passed(1e-6, 1e-4);
    let code = if passed { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Outcome::report(
        code,
        &json!({ "passed": passed, "certificate": cert, "check": check }),
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BlendFile {
    space: Space,
    targets: Vec<Element>,
    #[serde(default)]
    g_basis: SubspaceBasis,
    b: Element,
    #[serde(default)]
    solver: SolverConfig,
    g1: Element,
    g2: Element,
    lambdas: Option<Vec<f64>>,
    tol: Option<f64>,
}

fn run_blend(inv: &Invocation) -> Step<Outcome> {
    let file: BlendFile = load(&inv.input)?;
    let tol = inv.overrides.tol.or(file.tol).unwrap_or(DEFAULT_BLEND_TOL);
    let lambdas = file
        .lambdas
        .unwrap_or_else(|| (0..=10).map(|i| i as f64 / 10.0).collect());
    let problem = SimultaneousProblem {
        space: file.space,
        targets: file.targets,
        g_basis: file.g_basis,
        b: file.b,
        solver: file.solver,
    };
    let report = blend_check(&problem, &file.g1, &file.g2, &lambdas, tol)?;
    let passed = report.passed();
    let code = if passed { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Outcome::report(code, &json!({ "passed": passed, "report": report })))
}

fn run_uniqueness(inv: &Invocation) -> Step<Outcome> {
    let file: SolveFile = load(&inv.input)?;
    let o = &inv.overrides;
    let explicit = o.restarts;
    let (problem, _) = file.into_problem(&Overrides {
        restarts: None,
        ..o.clone()
    });
    let restarts = explicit.unwrap_or(DEFAULT_UNIQUENESS_RESTARTS);
    let report = uniqueness_probe(&problem, restarts)?;
    let code = if report.violated() { EXIT_VIOLATION } else { EXIT_OK };
    Ok(Outcome::report(code, &report))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceFile {
    space: Space,
    elements: Vec<Element>,
    probes: ProbePair,
    limit: Option<Element>,
    probe_dirs: Option<Vec<Element>>,
}

fn run_sequence(inv: &Invocation) -> Step<Outcome> {
    let file: SequenceFile = load(&inv.input)?;
    let seq = SequencePrefix {
        elements: file.elements,
        probes: file.probes,
    };
    let cauchy = cauchy_series(&file.space, &seq)?;
    let monotone = cauchy
        .windows(2)
        .all(|w| w[1].0 <= w[0].0 && w[1].1 <= w[0].1);
    let mut out = json!({
        "cauchy": cauchy.iter().map(|(y, z)| [*y, *z]).collect::<Vec<_>>(),
        "cauchy_monotone": monotone,
    });
    let mut passed = monotone;
    if let Some(limit) = &file.limit {
        let dirs = file
            .probe_dirs
            .clone()
            .unwrap_or_else(|| vec![seq.probes.y.clone(), seq.probes.z.clone()]);
        let conv = convergence_profile(&file.space, &seq, limit, &dirs)?;
        let norm_limit = norm_limit_check(&file.space, &seq, limit, &seq.probes.y)?;
        passed &= norm_limit.violations.is_empty();
        out["convergence"] = serde_json::to_value(conv).expect("profile serializes");
        out["norm_limit"] = serde_json::to_value(norm_limit).expect("report serializes");
    }
    out["passed"] = Value::Bool(passed);
    let code = if passed { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Outcome::report(code, &out))
}

//! Command-line front end.
//!
//! Every command writes one JSON document to stdout. Polynomials are
//! ascending coefficient lists of `[re, im]` pairs; roots are `{"re","im"}`
//! objects sorted by real part, then imaginary part.
//!
//! Exit codes: 0 success, 1 negative recognition, 2 usage, 3 numeric
//! non-convergence, 4 verification failure.

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cardano::{
    build_polynomial, closed_form_roots, compute_pq, recognize, CardanoError, CardanoParams, PQForm,
};
use crate::chebyshev::{cardano_recurrence_sequence, omega_closed, MAX_OMEGA_ORDER};
use crate::ferrari::{solve_quartic_depressed, solve_quartic_general, FerrariError};
use crate::operator::{
    commutation_check, fourier_root_recovery, fujii_w, verify_cardano_identity, OperatorError,
    CIRCULANT_TOL,
};
use crate::poly::{oracle_roots, Complex, PolyError, Polynomial, RootSet};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const TOL_ENV: &str = "CARDANO_TOL";

/// Tolerance used by `recognize` when `solve` is given raw coefficients.
pub const RECOGNIZE_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "cardano",
    version,
    about = "Generalized Cardano polynomials: build, solve, recognize and verify"
)]
pub struct Cli {
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of C_{n,c,d}.
    Build(ParamArgs),
    /// Roots of C_{n,c,d} or of an arbitrary real polynomial.
    Solve(SolveArgs),
    /// Detect whether a polynomial is some C_{n,c,d}.
    Recognize(CoeffArgs),
    /// Quartic roots by Ferrari's method.
    Ferrari(FerrariArgs),
    /// Check the operator identities for C_{n,c,d}.
    VerifyOp(ParamArgs),
    /// Vieta-Lucas polynomial and, with --c/--d, the Cardano recurrence.
    Chebyshev(ChebyshevArgs),
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub d: f64,
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    /// Comma-separated real coefficients, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Comma-separated real coefficients, constant term first.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["n", "c", "d"])]
    pub coeffs: Option<String>,
    #[arg(long, requires_all = ["c", "d"])]
    pub n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
}

/// Either the depressed form `x⁴ + ax² + bx + c` or the general
/// `x⁴ + a3 x³ + a2 x² + a1 x + a0`.
#[derive(Debug, Args)]
pub struct FerrariArgs {
    #[arg(long, allow_negative_numbers = true, requires_all = ["b", "c"], conflicts_with_all = ["a3", "a2", "a1", "a0"])]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["a2", "a1", "a0"])]
    pub a3: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a0: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ChebyshevArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true, requires = "d")]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "c")]
    pub d: Option<f64>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NonConvergence(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::NonConvergence(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl From<CardanoError> for CliError {
    fn from(e: CardanoError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::NonConvergence { .. } => CliError::NonConvergence(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FerrariError> for CliError {
    fn from(e: FerrariError) -> Self {
        match e {
            FerrariError::InconsistentInput { .. } => CliError::NonConvergence(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OperatorError> for CliError {
    fn from(e: OperatorError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Radical,
    Trig,
    Oracle,
    Ferrari,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub n: usize,
    pub c: f64,
    pub d: f64,
    #[serde(rename = "D")]
    pub discriminant: f64,
}

impl From<&CardanoParams> for ParamsJson {
    fn from(p: &CardanoParams) -> Self {
        Self {
            n: p.n(),
            c: p.c(),
            d: p.d(),
            discriminant: p.discriminant(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootJson {
    pub re: f64,
    pub im: f64,
}

/// The document emitted by `build`, `solve` and `ferrari`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsJson>,
    pub polynomial: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<RootJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolvent: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<AuxJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxJson {
    pub y: f64,
    pub alpha: f64,
    pub beta: f64,
}

// `+ 0.0` folds negative zero so golden output is stable.
pub fn encode_poly(p: &Polynomial) -> Vec<[f64; 2]> {
    p.coeffs()
        .iter()
        .map(|c| [c.re + 0.0, c.im + 0.0])
        .collect()
}

pub fn encode_roots(roots: &RootSet) -> Vec<RootJson> {
    roots
        .clone()
        .sorted()
        .iter()
        .map(|r| RootJson {
            re: r.re + 0.0,
            im: r.im + 0.0,
        })
        .collect()
}

/// `max |p(r)|` evaluated purely from the serialized coefficient pairs and
/// root objects.
pub fn residual_from_json(poly: &[[f64; 2]], roots: &[RootJson]) -> f64 {
    roots
        .iter()
        .map(|r| {
            let z = Complex::new(r.re, r.im);
            poly.iter()
                .rev()
                .fold(Complex::new(0.0, 0.0), |acc, c| {
                    acc * z + Complex::new(c[0], c[1])
                })
                .norm()
        })
        .fold(0.0, f64::max)
}

impl SolveReport {
    pub fn polynomial_only(params: Option<&CardanoParams>, poly: &Polynomial) -> Self {
        Self {
            params: params.map(ParamsJson::from),
            polynomial: encode_poly(poly),
            roots: None,
            method: None,
            residual_max: None,
            resolvent: None,
            aux: None,
        }
    }

    pub fn with_roots(
        params: Option<&CardanoParams>,
        poly: &Polynomial,
        roots: &RootSet,
        method: Method,
    ) -> Self {
        let polynomial = encode_poly(poly);
        let roots = encode_roots(roots);
        let residual_max = residual_from_json(&polynomial, &roots);
        Self {
            params: params.map(ParamsJson::from),
            polynomial,
            roots: Some(roots),
            method: Some(method),
            residual_max: Some(residual_max),
            resolvent: None,
            aux: None,
        }
    }

    /// `max |coeff|` of the emitted polynomial.
    pub fn coeff_scale(&self) -> f64 {
        self.polynomial
            .iter()
            .map(|c| c[0].hypot(c[1]))
            .fold(0.0, f64::max)
    }

    fn check_residual(&self, tol: f64) -> Result<(), CliError> {
        let residual = self.residual_max.unwrap_or(0.0);
        let bound = tol * (1.0 + self.coeff_scale());
        if residual > bound {
            return Err(CliError::Verification(format!(
                "residual {residual:e} exceeds tolerance {bound:e}"
            )));
        }
        Ok(())
    }
}

/// Result of a command: the JSON document and the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: Value,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(output: Value) -> Self {
        Self {
            output,
            exit_code: 0,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Parses a comma-separated list of real coefficients.
pub fn parse_coeffs(s: &str) -> Result<Polynomial, CliError> {
    let values = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("invalid coefficient {t:?}")))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    Polynomial::from_real(&values).map_err(CliError::from)
}

pub fn cmd_build(args: &ParamArgs) -> Result<Outcome, CliError> {
    let params = CardanoParams::new(args.n, args.c, args.d)?;
    let poly = build_polynomial(&params)?;
    Ok(Outcome::ok(to_value(&SolveReport::polynomial_only(
        Some(&params),
        &poly,
    ))))
}

fn closed_form_report(params: &CardanoParams, poly: &Polynomial) -> SolveReport {
    let method = match compute_pq(params).form {
        PQForm::RealRadical => Method::Radical,
        PQForm::ConjugatePair => Method::Trig,
    };
    SolveReport::with_roots(Some(params), poly, &closed_form_roots(params), method)
}

pub fn cmd_solve(args: &SolveArgs, tol: f64) -> Result<Outcome, CliError> {
    let report = match (&args.coeffs, args.n, args.c, args.d) {
        (Some(coeffs), None, None, None) => {
            let poly = parse_coeffs(coeffs)?;
            if poly.degree() == 0 {
                return Err(CliError::Usage("a constant polynomial has no roots".into()));
            }
            match recognize(&poly, RECOGNIZE_TOL) {
                Some(params) => closed_form_report(&params, &poly),
                None => SolveReport::with_roots(None, &poly, &oracle_roots(&poly)?, Method::Oracle),
            }
        }
        (None, Some(n), Some(c), Some(d)) => {
            let params = CardanoParams::new(n, c, d)?;
            closed_form_report(&params, &build_polynomial(&params)?)
        }
        _ => {
            return Err(CliError::Usage(
                "give either --coeffs or all of --n, --c, --d".into(),
            ))
        }
    };
    report.check_residual(tol)?;
    Ok(Outcome::ok(to_value(&report)))
}

pub fn cmd_recognize(args: &CoeffArgs) -> Result<Outcome, CliError> {
    let poly = parse_coeffs(&args.coeffs)?;
    Ok(match recognize(&poly, RECOGNIZE_TOL) {
        Some(params) => Outcome::ok(to_value(&ParamsJson::from(&params))),
        None => Outcome {
            output: Value::String("not-cardano".into()),
            exit_code: 1,
        },
    })
}

pub fn cmd_ferrari(args: &FerrariArgs, tol: f64) -> Result<Outcome, CliError> {
    let (sol, coeffs) = match (args.a, args.b, args.c, args.a3, args.a2, args.a1, args.a0) {
        (Some(a), Some(b), Some(c), None, None, None, None) => {
            (solve_quartic_depressed(a, b, c)?, [c, b, a, 0.0, 1.0])
        }
        (None, None, None, Some(a3), Some(a2), Some(a1), Some(a0)) => (
            solve_quartic_general(a3, a2, a1, a0)?,
            [a0, a1, a2, a3, 1.0],
        ),
        _ => {
            return Err(CliError::Usage(
                "give either --a --b --c or all of --a3 --a2 --a1 --a0".into(),
            ))
        }
    };
    let poly = Polynomial::from_real(&coeffs)?;
    let mut report = SolveReport::with_roots(None, &poly, &sol.roots, Method::Ferrari);
    report.resolvent = Some(encode_poly(&sol.resolvent));
    report.aux = Some(AuxJson {
        y: sol.aux.y,
        alpha: sol.aux.alpha,
        beta: sol.aux.beta,
    });
    report.check_residual(tol)?;
    Ok(Outcome::ok(to_value(&report)))
}

/// Tolerances of `verify-op` besides the residual tolerance.
pub const SPECTRUM_TOL: f64 = 1e-9;
pub const COMMUTATION_TOL_PER_DIM: f64 = 1e-12;

pub fn cmd_verify_op(args: &ParamArgs, tol: f64) -> Result<Outcome, CliError> {
    let params = CardanoParams::new(args.n, args.c, args.d)?;
    let n = params.n();
    let report = verify_cardano_identity(&params)?;
    let pq = compute_pq(&params);
    let w_diag = RootSet::new(fujii_w(&params)?.diag());
    let commutation = commutation_check(n)?;
    let recovered = fourier_root_recovery(&params)?;

    let mut expected_row = vec![Complex::new(0.0, 0.0); n];
    expected_row[1] = pq.q;
    expected_row[n - 1] = pq.p;
    let circulant_ok = report.circulant_first_row.as_ref().is_some_and(|row| {
        row.iter()
            .zip(&expected_row)
            .all(|(a, b)| (a - b).norm() <= CIRCULANT_TOL)
    });
    let residual_bound = tol * report.scale;
    let checks = json!({
        "identity_w": report.identity_residual <= residual_bound,
        "identity_x": report.x_residual <= residual_bound,
        "circulant": circulant_ok,
        "spectrum": report.spectrum.multiset_eq(&w_diag, SPECTRUM_TOL),
        "commutation": commutation <= COMMUTATION_TOL_PER_DIM * n as f64,
        "fourier_recovery": recovered.multiset_eq(&closed_form_roots(&params), SPECTRUM_TOL),
    });
    let passed = checks
        .as_object()
        .expect("object")
        .values()
        .all(|v| v.as_bool() == Some(true));
    let output = json!({
        "params": ParamsJson::from(&params),
        "identity_residual": report.identity_residual,
        "x_residual": report.x_residual,
        "scale": report.scale,
        "tolerance": residual_bound,
        "circulant_first_row": report
            .circulant_first_row
            .as_ref()
            .map(|row| row.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>()),
        "spectrum": encode_roots(&report.spectrum),
        "commutation_residual": commutation,
        "checks": checks,
        "passed": passed,
    });
    Ok(Outcome {
        output,
        exit_code: if passed { 0 } else { 4 },
    })
}

pub fn cmd_chebyshev(args: &ChebyshevArgs) -> Result<Outcome, CliError> {
    if args.n == 0 || args.n > MAX_OMEGA_ORDER {
        return Err(CliError::Usage(format!(
            "order must be between 1 and {MAX_OMEGA_ORDER}, got {}",
            args.n
        )));
    }
    let omega = omega_closed(args.n);
    let mut output = json!({
        "n": args.n,
        "omega": omega.coeffs().iter().map(|&c| c as i64).collect::<Vec<_>>(),
    });
    if let (Some(c), Some(d)) = (args.c, args.d) {
        if !(c.is_finite() && d.is_finite()) {
            return Err(CliError::Usage("c and d must be finite".into()));
        }
        let seq = cardano_recurrence_sequence(c, d, args.n.max(3));
        let as_reals = |p: &Polynomial| p.real_coeffs();
        output["c"] = json!(c);
        output["d"] = json!(d);
        output["cardano"] = json!(as_reals(&seq[args.n - 1]));
        output["cardano_sequence"] =
            json!(seq.iter().take(args.n).map(as_reals).collect::<Vec<_>>());
    }
    Ok(Outcome::ok(output))
}

/// Runs one parsed command line.
pub fn run(cli: &Cli, tol: f64) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Solve(args) => cmd_solve(args, tol),
        Command::Recognize(args) => cmd_recognize(args),
        Command::Ferrari(args) => cmd_ferrari(args, tol),
        Command::VerifyOp(args) => cmd_verify_op(args, tol),
        Command::Chebyshev(args) => cmd_chebyshev(args),
    }
}

/// Reads the residual tolerance override from the environment value.
pub fn tolerance_from_env(value: Option<&str>) -> Result<f64, CliError> {
    match value {
        None => Ok(DEFAULT_TOL),
        Some(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t > 0.0)
            .ok_or_else(|| {
                CliError::Usage(format!("{TOL_ENV} must be a positive number, got {s:?}"))
            }),
    }
}

pub fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("json")
    } else {
        serde_json::to_string(value).expect("json")
    }
}

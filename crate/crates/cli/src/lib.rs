//! Command-line front end: Lamb constants, tables, single verifications,
//! sweeps, identity checks and domain geometry checks.
//!
//! Exit codes: 0 success, 1 a verdict was violated, 2 invalid input,
//! 3 numerical failure. Errors are reported on stderr as a JSON object
//! `{"error": kind, "message": text}`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hardylamb::quadrature;
use hardylamb::statements::{
    corollary5_compare, default_cells, evaluate_statement, expand_grid, format_number, parameter_sweep, verify_identity,
    EvalOptions, Exponents, Identity, IdentityInputs, IdentityReport, InequalityReport, StatementId, SubjectKind,
    SubjectSpec, SweepCell, SweepOptions, SweepReport, Verdict, DEFAULT_MC_SAMPLES, DOMAIN_STATEMENTS,
    ONE_DIMENSIONAL,
};
use hardylamb::subjects::{make_domain, parse_function, parse_segment, radial_subject, SegmentSubject, Subject};
use hardylamb::{solve_lamb_with, Error, LambParams, SolveMethod};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "hardylamb", version, about = "Parametric Lamb constants and Hardy-type inequality checks")]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Seed for Monte Carlo cross-checks.
    #[arg(long, global = true, env = "HARDYLAMB_SEED", default_value_t = 42)]
    seed: u64,
    /// Relative tolerance of 1D quadrature (default 1e-10).
    #[arg(long, global = true)]
    rel_tol_1d: Option<f64>,
    /// Relative tolerance of layer-cake quadrature (default 1e-8).
    #[arg(long, global = true)]
    rel_tol_nd: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the Lamb equation for one parameter triple.
    Const {
        #[command(flatten)]
        params: ParamArgs,
        /// auto, bisect, ode or closed.
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Table of Lamb constants over parameter ranges.
    Table {
        /// `a,b` or a single value.
        #[arg(long, allow_hyphen_values = true)]
        nu_range: String,
        #[arg(long, allow_hyphen_values = true)]
        m_range: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda_range: String,
        /// Intervals per range; each range gives `steps + 1` points.
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Evaluate one inequality on one subject.
    Verify {
        #[arg(long)]
        statement: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        r: Option<f64>,
        /// Test function, e.g. `powerbump:2,1`.
        #[arg(long = "fn")]
        function: Option<String>,
        /// Segment `a,b`.
        #[arg(long, allow_hyphen_values = true)]
        segment: Option<String>,
        /// Convex domain, e.g. `ball:2,1` or `box:2x1`.
        #[arg(long)]
        domain: Option<String>,
    },
    /// Sweep statements over a parameter grid and a battery of subjects.
    Sweep {
        /// Statement id, `all`, `all-1d` or `all-nd`.
        #[arg(long, default_value = "all")]
        statement: String,
        /// JSON grid file; the default grids are used without it.
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Replace the default battery (repeatable).
        #[arg(long = "fn")]
        functions: Vec<String>,
        /// Monte Carlo samples per domain integral cross-check; 0 disables.
        #[arg(long, default_value_t = DEFAULT_MC_SAMPLES)]
        mc_samples: usize,
    },
    /// Residuals of the Bessel identities and the profile ODE.
    Identities {
        #[arg(long, default_value = "all")]
        which: String,
    },
    /// Check a domain's level-set profile against its volume.
    Domains {
        #[arg(long)]
        domain: String,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    kind: String,
    message: String,
    partial: Option<serde_json::Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_input_error() { EXIT_INVALID } else { EXIT_NUMERICAL };
        let partial = match &e {
            Error::Numerical { partial: Some(p), .. } => serde_json::to_value(p.as_ref()).ok(),
            _ => None,
        };
        Failure { code, kind: e.kind().to_string(), message: e.to_string(), partial }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, kind: "invalid-input".into(), message: message.into(), partial: None }
}

type CmdResult = std::result::Result<(String, i32), Failure>;

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            report_failure(err, &invalid(e.to_string().trim_end().to_string()));
            return EXIT_INVALID;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, text.as_bytes()) {
                    report_failure(err, &invalid(format!("cannot write {}: {e}", path.display())));
                    return EXIT_INVALID;
                }
            } else if out.write_all(text.as_bytes()).is_err() {
                return EXIT_NUMERICAL;
            }
            code
        }
        Err(f) => {
            report_failure(err, &f);
            f.code
        }
    }
}

fn report_failure(err: &mut dyn Write, f: &Failure) {
    let mut v = json!({ "error": f.kind, "message": f.message });
    if let Some(p) = &f.partial {
        v["partial"] = p.clone();
    }
    let _ = writeln!(err, "{v}");
}

fn tolerances(cli: &Cli) -> std::result::Result<EvalOptions, Failure> {
    let mut opts = EvalOptions::default();
    if let Ok(env) = std::env::var("HARDYLAMB_TOL") {
        let parts: Vec<&str> = env.split(',').map(str::trim).collect();
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| invalid(format!("HARDYLAMB_TOL: cannot parse '{s}'; expected 'tol' or 'tol_1d,tol_nd'")))
        };
        match parts.as_slice() {
            [one] => {
                opts.rel_tol_1d = parse(one)?;
                opts.rel_tol_nd = opts.rel_tol_1d;
            }
            [a, b] => {
                opts.rel_tol_1d = parse(a)?;
                opts.rel_tol_nd = parse(b)?;
            }
            _ => return Err(invalid("HARDYLAMB_TOL expects 'tol' or 'tol_1d,tol_nd'")),
        }
    }
    if let Some(t) = cli.rel_tol_1d {
        opts.rel_tol_1d = t;
    }
    if let Some(t) = cli.rel_tol_nd {
        opts.rel_tol_nd = t;
    }
    for t in [opts.rel_tol_1d, opts.rel_tol_nd] {
        if !(t > 0.0 && t < 1.0) {
            return Err(invalid(format!("relative tolerance must lie in (0, 1), got {t}")));
        }
    }
    Ok(opts)
}

fn execute(cli: &Cli) -> CmdResult {
    let opts = tolerances(cli)?;
    match &cli.command {
        Command::Const { params, method } => cmd_const(cli, params, method),
        Command::Table { nu_range, m_range, lambda_range, steps, method } => {
            cmd_table(cli, nu_range, m_range, lambda_range, *steps, method)
        }
        Command::Verify { statement, params, p, r, function, segment, domain } => cmd_verify(
            cli,
            &opts,
            statement,
            params,
            Exponents::new(*p, *r),
            function.as_deref(),
            segment.as_deref(),
            domain.as_deref(),
        ),
        Command::Sweep { statement, grid, functions, mc_samples } => {
            cmd_sweep(cli, &opts, statement, grid.as_ref(), functions, *mc_samples)
        }
        Command::Identities { which } => cmd_identities(cli, which),
        Command::Domains { domain } => cmd_domains(cli, domain),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| if f.contains([',', '"', '\n']) { format!("\"{}\"", f.replace('"', "\"\"")) } else { f.clone() })
        .collect();
    let mut s = quoted.join(",");
    s.push('\n');
    s
}

fn params_of(p: &ParamArgs, defaults: (f64, f64, f64)) -> LambParams {
    LambParams::new(p.nu.unwrap_or(defaults.0), p.m.unwrap_or(defaults.1), p.lambda.unwrap_or(defaults.2))
}

fn require_params(p: &ParamArgs) -> std::result::Result<LambParams, Failure> {
    match (p.nu, p.m, p.lambda) {
        (Some(nu), Some(m), Some(lambda)) => Ok(LambParams::new(nu, m, lambda)),
        _ => Err(invalid("--nu, --m and --lambda are required")),
    }
}

#[derive(Serialize)]
struct ConstOutput {
    nu: f64,
    m: f64,
    lambda: f64,
    c: f64,
    z: f64,
    residual: f64,
    method: String,
    bracket: (f64, f64),
    limiting: bool,
}

fn solve_row(params: LambParams, method: SolveMethod) -> hardylamb::Result<ConstOutput> {
    let r = solve_lamb_with(&params, method)?;
    Ok(ConstOutput {
        nu: params.nu,
        m: params.m,
        lambda: params.lambda,
        c: r.c,
        z: r.z,
        residual: r.residual,
        method: r.method.to_string(),
        bracket: r.bracket,
        limiting: r.limiting,
    })
}

fn cmd_const(cli: &Cli, params: &ParamArgs, method: &str) -> CmdResult {
    let method: SolveMethod = method.parse()?;
    let params = require_params(params)?;
    let o = solve_row(params, method)?;
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&o),
        Format::Csv => {
            csv_line(&["nu", "m", "lambda", "c", "z", "residual", "method"].map(String::from))
                + &csv_line(&[
                    format_number(o.nu),
                    format_number(o.m),
                    format_number(o.lambda),
                    format_number(o.c),
                    format_number(o.z),
                    format_number(o.residual),
                    o.method.clone(),
                ])
        }
        Format::Text => format!(
            "c        = {}\nz        = {}\nresidual = {:e}\nmethod   = {}\nbracket  = [{}, {}]\n",
            o.c, o.z, o.residual, o.method, o.bracket.0, o.bracket.1
        ),
    };
    Ok((text, EXIT_OK))
}

fn parse_range(text: &str, name: &str, steps: usize) -> std::result::Result<Vec<f64>, Failure> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| invalid(format!("--{name}: cannot parse '{s}'"))))
        .collect::<std::result::Result<_, _>>()?;
    match parts.as_slice() {
        [a] => Ok(vec![*a]),
        [a, b] if a == b || steps == 0 => Ok(vec![*a]),
        [a, b] => Ok((0..=steps).map(|i| a + (b - a) * i as f64 / steps as f64).collect()),
        _ => Err(invalid(format!("--{name} expects 'a,b' or a single value"))),
    }
}

fn cmd_table(cli: &Cli, nu: &str, m: &str, lambda: &str, steps: usize, method: &str) -> CmdResult {
    let method: SolveMethod = method.parse()?;
    let nus = parse_range(nu, "nu-range", steps)?;
    let ms = parse_range(m, "m-range", steps)?;
    let lambdas = parse_range(lambda, "lambda-range", steps)?;
    let mut rows = Vec::new();
    for &nu in &nus {
        for &m in &ms {
            for &lambda in &lambdas {
                let p = LambParams::new(nu, m, lambda);
                rows.push((p, solve_row(p, method)));
            }
        }
    }
    let text = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = csv_line(&["nu", "m", "lambda", "c", "z", "residual", "method", "status"].map(String::from));
            for (p, r) in &rows {
                let fields = match r {
                    Ok(o) => [
                        format_number(p.nu),
                        format_number(p.m),
                        format_number(p.lambda),
                        format_number(o.c),
                        format_number(o.z),
                        format_number(o.residual),
                        o.method.clone(),
                        "ok".into(),
                    ],
                    Err(e) => [
                        format_number(p.nu),
                        format_number(p.m),
                        format_number(p.lambda),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        e.kind().to_string(),
                    ],
                };
                s += &csv_line(&fields);
            }
            s
        }
        Format::Json => {
            let v: Vec<serde_json::Value> = rows
                .iter()
                .map(|(p, r)| match r {
                    Ok(o) => serde_json::to_value(o).expect("serializable"),
                    Err(e) => json!({"nu": p.nu, "m": p.m, "lambda": p.lambda, "error": e.kind(), "message": e.to_string()}),
                })
                .collect();
            to_json(&v)
        }
        Format::Text => {
            let mut s = format!("{:>10} {:>10} {:>10} {:>22}\n", "nu", "m", "lambda", "c");
            for (p, r) in &rows {
                let c = match r {
                    Ok(o) => format_number(o.c),
                    Err(e) => e.kind().to_string(),
                };
                let _ = writeln!(s, "{:>10} {:>10} {:>10} {:>22}", p.nu, p.m, p.lambda, c);
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn report_text(r: &InequalityReport) -> String {
    let mut s = format!("{} on {}\n", r.statement, r.subject);
    let _ = writeln!(s, "params: nu = {}, m = {}, lambda = {}", r.params.nu, r.params.m, r.params.lambda);
    if let Some(c) = r.lamb_constant {
        let _ = writeln!(s, "lamb constant: {c}");
    }
    for t in &r.terms {
        let side = if t.side == hardylamb::statements::Side::Lhs { "lhs" } else { "rhs" };
        match t.integral {
            Some(i) => {
                let _ = writeln!(s, "  {side} {} * {} = {} * {} = {}", t.coefficient_name, t.integrand, t.coefficient, i, t.value);
            }
            None => {
                let _ = writeln!(s, "  {side} {} * {} skipped (zero coefficient)", t.coefficient_name, t.integrand);
            }
        }
    }
    if let (Some(l), Some(rh), Some(m)) = (r.lhs, r.rhs, r.margin) {
        let _ = writeln!(s, "lhs = {l}\nrhs = {rh}\nmargin = {m} (tolerance {:e})", r.tolerance);
    }
    let _ = writeln!(s, "verdict: {}", r.verdict);
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Holds => EXIT_OK,
        Verdict::ViolatedBeyondTolerance => EXIT_VIOLATED,
        Verdict::Inadmissible => EXIT_INVALID,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cli: &Cli,
    opts: &EvalOptions,
    statement: &str,
    params: &ParamArgs,
    extra: Exponents,
    function: Option<&str>,
    segment: Option<&str>,
    domain: Option<&str>,
) -> CmdResult {
    let stmt: StatementId = statement.parse()?;
    let kind = stmt.kind();
    let lp = params_of(params, stmt.canonical_params().map_or((0.0, 1.0, 0.0), |p| (p.nu, p.m, p.lambda)));
    if kind == SubjectKind::Comparison {
        let cmp = corollary5_compare(&lp)?;
        let code = if cmp.holds { EXIT_OK } else { EXIT_VIOLATED };
        return Ok((to_json(&cmp), code));
    }
    let function = function.ok_or_else(|| invalid("--fn is required"))?;
    let f = parse_function(function)?;
    let subject = match kind {
        SubjectKind::Domain => {
            if segment.is_some() {
                return Err(invalid(format!("{stmt} is a domain statement; use --domain")));
            }
            let d = domain.ok_or_else(|| invalid(format!("{stmt} needs --domain")))?;
            Subject::Radial(radial_subject(make_domain(d)?, f)?)
        }
        _ => {
            if domain.is_some() {
                return Err(invalid(format!("{stmt} is a segment statement; use --segment")));
            }
            let (a, b) = match segment {
                Some(s) => parse_segment(s)?,
                None if kind == SubjectKind::OneSided => (0.0, 1.0),
                None => (-1.0, 1.0),
            };
            Subject::Segment(SegmentSubject::new(f, a, b)?)
        }
    };
    let report = evaluate_statement(stmt, &lp, &extra, &subject, opts)?;
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Text => report_text(&report),
        Format::Csv => {
            let opt = |v: Option<f64>| v.map(format_number).unwrap_or_default();
            csv_line(&["statement", "nu", "m", "lambda", "p", "r", "subject", "lhs", "rhs", "margin", "verdict"].map(String::from))
                + &csv_line(&[
                    report.statement.clone(),
                    format_number(report.params.nu),
                    format_number(report.params.m),
                    format_number(report.params.lambda),
                    opt(report.params.p),
                    opt(report.params.r),
                    report.subject.clone(),
                    opt(report.lhs),
                    opt(report.rhs),
                    opt(report.margin),
                    report.verdict.to_string(),
                ])
        }
    };
    Ok((text, verdict_code(report.verdict)))
}

fn statement_set(text: &str) -> std::result::Result<Vec<StatementId>, Failure> {
    let mut all_1d = ONE_DIMENSIONAL.to_vec();
    match text.trim().to_ascii_lowercase().as_str() {
        "all" => {
            all_1d.extend(DOMAIN_STATEMENTS);
            all_1d.push(StatementId::COR5);
            Ok(all_1d)
        }
        "all-1d" => Ok(all_1d),
        "all-nd" => Ok(DOMAIN_STATEMENTS.to_vec()),
        _ => Ok(vec![text.parse::<StatementId>()?]),
    }
}

fn sweep_summary(r: &SweepReport) -> serde_json::Value {
    json!({
        "rows": r.rows.len(),
        "evaluated": r.evaluated,
        "inadmissible": r.inadmissible,
        "skipped": r.skipped,
        "violations": r.violations,
        "numerical_failures": r.numerical_failures,
        "min_margin": r.min_margin,
        "worst": r.worst,
        "mc_checks": r.mc_checks.len(),
        "mc_failures": r.mc_failures,
    })
}

fn cmd_sweep(
    cli: &Cli,
    opts: &EvalOptions,
    statement: &str,
    grid: Option<&PathBuf>,
    functions: &[String],
    mc_samples: usize,
) -> CmdResult {
    for f in functions {
        if !f.trim().eq_ignore_ascii_case(hardylamb::statements::OWN_PROFILE) {
            parse_function(f)?;
        }
    }
    let cells: Vec<SweepCell> = match grid {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| invalid(format!("cannot read grid {}: {e}", path.display())))?;
            let default = match statement.trim().to_ascii_lowercase().as_str() {
                "all" | "all-1d" | "all-nd" => None,
                _ => Some(statement.parse::<StatementId>()?),
            };
            expand_grid(&text, default)?
        }
        None => statement_set(statement)?.into_iter().flat_map(default_cells).collect(),
    };
    let battery: Vec<SubjectSpec> = functions.iter().map(|f| SubjectSpec::function(f)).collect();
    let sweep_opts = SweepOptions {
        seed: cli.seed,
        mc_samples: (mc_samples > 0).then_some(mc_samples),
        eval: *opts,
    };
    let report = parameter_sweep(&cells, (!battery.is_empty()).then_some(battery.as_slice()), &sweep_opts)?;
    let text = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => report.to_csv()?,
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = String::new();
            let summary = sweep_summary(&report);
            for (k, v) in summary.as_object().expect("object") {
                if k != "worst" {
                    let _ = writeln!(s, "{k}: {v}");
                }
            }
            if let Some(w) = &report.worst {
                let _ = writeln!(s, "worst: {} {} margin {}", w.statement, w.subject, format_number(w.margin.unwrap_or(f64::NAN)));
            }
            for f in report.failures() {
                let _ = writeln!(s, "failure: {} {} {} {}", f.statement, f.subject, f.verdict.as_str(), f.reason);
            }
            s
        }
    };
    let code = if report.violations > 0 {
        EXIT_VIOLATED
    } else if report.numerical_failures > 0 || report.mc_failures > 0 {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    };
    Ok((text, code))
}

fn cmd_identities(cli: &Cli, which: &str) -> CmdResult {
    let list: Vec<Identity> = if which.trim().eq_ignore_ascii_case("all") {
        Identity::ALL.to_vec()
    } else {
        which.split(',').map(|w| w.parse::<Identity>()).collect::<hardylamb::Result<_>>()?
    };
    let reports: Vec<IdentityReport> =
        list.iter().map(|&w| verify_identity(w, &IdentityInputs::Default)).collect::<hardylamb::Result<_>>()?;
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&reports),
        Format::Csv => {
            let mut s = csv_line(&["identity", "points", "max_residual", "relative", "threshold", "passed"].map(String::from));
            for r in &reports {
                s += &csv_line(&[
                    r.identity.to_string(),
                    r.points.to_string(),
                    format_number(r.max_residual),
                    r.relative.to_string(),
                    format_number(r.threshold),
                    r.passed.to_string(),
                ]);
            }
            s
        }
        Format::Text => {
            let mut s = format!("{:<12} {:>7} {:>14} {:>10} {:>7}\n", "identity", "points", "max residual", "threshold", "passed");
            for r in &reports {
                let _ = writeln!(
                    s,
                    "{:<12} {:>7} {:>14.3e} {:>10.0e} {:>7}",
                    r.identity.name(),
                    r.points,
                    r.max_residual,
                    r.threshold,
                    r.passed
                );
            }
            s
        }
    };
    let code = if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_VIOLATED };
    Ok((text, code))
}

#[derive(Serialize)]
struct DomainCheck {
    domain: String,
    dim: usize,
    inradius: f64,
    volume: f64,
    area_integral: f64,
    relative_error: f64,
    passed: bool,
}

/// Relative agreement required between `∫ A(t) dt` and the volume.
const DOMAIN_CHECK_TOL: f64 = 1e-9;

fn cmd_domains(cli: &Cli, spec: &str) -> CmdResult {
    let d = make_domain(spec)?;
    let area = quadrature::layer_cake_integral(&d, |_| 1.0, 1e-12)?;
    let volume = d.volume();
    let relative_error = (area.value - volume).abs() / volume;
    let check = DomainCheck {
        domain: d.label(),
        dim: d.dim(),
        inradius: d.inradius(),
        volume,
        area_integral: area.value,
        relative_error,
        passed: relative_error <= DOMAIN_CHECK_TOL,
    };
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&check),
        Format::Csv => {
            csv_line(&["domain", "dim", "inradius", "volume", "area_integral", "relative_error", "passed"].map(String::from))
                + &csv_line(&[
                    check.domain.clone(),
                    check.dim.to_string(),
                    format_number(check.inradius),
                    format_number(check.volume),
                    format_number(check.area_integral),
                    format_number(check.relative_error),
                    check.passed.to_string(),
                ])
        }
        Format::Text => format!(
            "{}: dim {}, inradius {}, volume {}, int A(t) dt = {} (relative error {:e})\n",
            check.domain, check.dim, check.inradius, check.volume, check.area_integral, check.relative_error
        ),
    };
    Ok((text, if check.passed { EXIT_OK } else { EXIT_NUMERICAL }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_codes() {
        let f = Failure::from(Error::InvalidParams("m".into()));
        assert_eq!((f.code, f.kind.as_str()), (EXIT_INVALID, Error::InvalidParams(String::new()).kind()));
        let f = Failure::from(Error::Accuracy { best: 1.0, error: 0.5 });
        assert_eq!(f.code, EXIT_NUMERICAL);
        let f = Failure::from(Error::Numerical { message: "x".into(), partial: None });
        assert_eq!(f.code, EXIT_NUMERICAL);
        assert!(f.partial.is_none());
    }

    #[test]
    fn failure_json_has_partial() {
        let mut buf = Vec::new();
        let f = Failure { code: EXIT_NUMERICAL, kind: "numerical".into(), message: "m".into(), partial: Some(json!({"a": 1})) };
        report_failure(&mut buf, &f);
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["partial"]["a"], 1);
        assert_eq!(v["error"], "numerical");
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0,1", "nu", 4).unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_range("2", "m", 4).unwrap(), vec![2.0]);
        assert!(parse_range("a,b", "m", 4).is_err());
    }
}

//! Parameter sweeps: every (cell, subject) pair of a grid evaluated in
//! parallel, aggregated in grid order.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::eval::{evaluate_statement_cached, EvalOptions, IntegralCache};
use super::identities::corollary5_compare;
use super::registry::{self, Exponents, StatementId, SubjectKind, TermSpec};
use super::report::Verdict;
use crate::error::{Error, Result};
use crate::lamb::{constants::constant_for, LambParams};
use crate::subjects::{
    bessel_profile, make_domain, parse_function, radial_subject, RadialSubject, SegmentSubject, Subject, ZERO_COEFF,
};

/// Function spec that stands for the Bessel profile of the cell's own parameters.
pub const OWN_PROFILE: &str = "besselprofile:own";

/// Samples per Monte Carlo cross-check.
pub const DEFAULT_MC_SAMPLES: usize = 100_000;

/// A test function and where to put it. With neither a segment nor a
/// domain the function is placed on the default placements of the
/// statement's kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubjectSpec {
    pub function: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segment: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
}

impl SubjectSpec {
    pub fn function(function: &str) -> Self {
        SubjectSpec { function: function.to_string(), segment: None, domain: None }
    }

    pub fn on_segment(function: &str, a: f64, b: f64) -> Self {
        SubjectSpec { function: function.to_string(), segment: Some((a, b)), domain: None }
    }

    pub fn on_domain(function: &str, domain: &str) -> Self {
        SubjectSpec { function: function.to_string(), segment: None, domain: Some(domain.to_string()) }
    }

    fn fits(&self, kind: SubjectKind) -> bool {
        match kind {
            SubjectKind::Domain => self.segment.is_none(),
            SubjectKind::OneSided | SubjectKind::TwoSided => self.domain.is_none(),
            SubjectKind::Comparison => false,
        }
    }

    /// Concrete placements for a statement kind.
    fn expand(&self, kind: SubjectKind) -> Vec<SubjectSpec> {
        if !self.fits(kind) {
            return Vec::new();
        }
        if self.segment.is_some() || self.domain.is_some() {
            return vec![self.clone()];
        }
        match kind {
            SubjectKind::Domain => DEFAULT_DOMAINS.iter().map(|d| SubjectSpec::on_domain(&self.function, d)).collect(),
            k => default_segments(k).iter().map(|&(a, b)| SubjectSpec::on_segment(&self.function, a, b)).collect(),
        }
    }
}

/// One grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub statement: StatementId,
    pub params: LambParams,
    #[serde(default)]
    pub exponents: Exponents,
    /// Overrides the sweep battery for this cell.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subjects: Option<Vec<SubjectSpec>>,
}

impl SweepCell {
    pub fn new(statement: StatementId, params: LambParams, exponents: Exponents) -> Self {
        SweepCell { statement, params, exponents, subjects: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub seed: u64,
    /// Monte Carlo samples per cross-check of domain integrals; `None` disables it.
    pub mc_samples: Option<usize>,
    pub eval: EvalOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { seed: 42, mc_samples: Some(DEFAULT_MC_SAMPLES), eval: EvalOptions::default() }
    }
}

/// Status of one sweep row beyond the report verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Holds,
    ViolatedBeyondTolerance,
    Inadmissible,
    /// The cell's parameters fail the statement's validity predicate.
    Skipped,
    NumericalFailure,
}

impl RowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowStatus::Holds => "holds",
            RowStatus::ViolatedBeyondTolerance => "violated-beyond-tolerance",
            RowStatus::Inadmissible => "inadmissible",
            RowStatus::Skipped => "skipped",
            RowStatus::NumericalFailure => "numerical-failure",
        }
    }
}

impl From<Verdict> for RowStatus {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Holds => RowStatus::Holds,
            Verdict::ViolatedBeyondTolerance => RowStatus::ViolatedBeyondTolerance,
            Verdict::Inadmissible => RowStatus::Inadmissible,
        }
    }
}

/// One evaluated (cell, subject) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub statement: String,
    pub nu: f64,
    pub m: f64,
    pub lambda: f64,
    pub p: Option<f64>,
    pub r: Option<f64>,
    pub subject: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub margin: Option<f64>,
    pub tolerance: Option<f64>,
    pub verdict: RowStatus,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub reason: String,
}

/// Layer-cake value of a domain integral against Monte Carlo.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McCheck {
    pub subject: String,
    pub integrand: String,
    pub layer_cake: f64,
    pub monte_carlo: f64,
    pub std_error: f64,
    pub ok: bool,
}

/// Aggregate of a sweep, rows in grid order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub evaluated: usize,
    pub inadmissible: usize,
    pub skipped: usize,
    pub violations: usize,
    pub numerical_failures: usize,
    pub min_margin: Option<f64>,
    pub worst: Option<SweepRow>,
    pub mc_checks: Vec<McCheck>,
    pub mc_failures: usize,
}

impl SweepReport {
    /// Rows that are violations or numerical failures.
    pub fn failures(&self) -> Vec<&SweepRow> {
        self.rows
            .iter()
            .filter(|r| matches!(r.verdict, RowStatus::ViolatedBeyondTolerance | RowStatus::NumericalFailure))
            .collect()
    }

    /// Admissible cells of the given statements that were evaluated.
    pub fn evaluated_for(&self, ids: &[StatementId]) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(r.verdict, RowStatus::Holds | RowStatus::ViolatedBeyondTolerance))
            .filter(|r| ids.iter().any(|id| id.name() == r.statement))
            .count()
    }

    /// CSV with one row per (cell, subject).
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Internal(format!("csv: {e}"));
        w.write_record(["statement", "nu", "m", "lambda", "p", "r", "subject", "lhs", "rhs", "margin", "verdict"])
            .map_err(io)?;
        let opt = |v: Option<f64>| v.map(format_number).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.statement.clone(),
                format_number(r.nu),
                format_number(r.m),
                format_number(r.lambda),
                opt(r.p),
                opt(r.r),
                r.subject.clone(),
                opt(r.lhs),
                opt(r.rhs),
                opt(r.margin),
                r.verdict.as_str().to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }
}

/// Shortest round-trip text for a number, in exponent form when it is
/// very small or very large.
pub fn format_number(x: f64) -> String {
    let a = x.abs();
    if x != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

const DEFAULT_DOMAINS: [&str; 4] = ["ball:2,1", "ball:3,1", "box:1x1", "box:2x1x1"];

fn default_segments(kind: SubjectKind) -> &'static [(f64, f64)] {
    match kind {
        SubjectKind::OneSided => &[(0.0, 1.0), (1.0, 3.0)],
        _ => &[(-1.0, 1.0), (0.0, 3.0)],
    }
}

/// The default battery of test functions for a statement kind.
pub fn default_battery(kind: SubjectKind) -> Vec<SubjectSpec> {
    match kind {
        SubjectKind::Comparison => Vec::new(),
        SubjectKind::Domain => ["powerbump:2,0", "powerbump:3,0", "powerbump:2,1", "sinepower:2"]
            .iter()
            .flat_map(|f| SubjectSpec::function(f).expand(kind))
            .collect(),
        k => [
            "powerbump:1.5,1",
            "powerbump:1.5,2",
            "powerbump:2,1",
            "powerbump:2,2",
            "powerbump:3,1",
            "powerbump:3,2",
            "sinepower:1.5",
            "sinepower:2",
            "smoothtent:2",
            OWN_PROFILE,
        ]
        .iter()
        .flat_map(|f| SubjectSpec::function(f).expand(k))
        .collect(),
    }
}

fn nu_values(id: StatementId, m: f64) -> Vec<f64> {
    use StatementId::*;
    match id {
        L3A | L3B | T1A | T1B | T4A | T4B | COR2 | AW1 | COR3 | T5 => vec![0.25 / m, 0.5 / m, 1.0 / m],
        T2B | T6B => vec![0.0, 0.25 / m, 0.5 / m],
        _ => vec![0.0, 0.5 / m, 1.0 / m],
    }
}

fn m_values(id: StatementId) -> Vec<f64> {
    use StatementId::*;
    match id {
        L3A | L3B | T1A | T1B | T4A | T4B | COR2 | AW1 | T3B | T7B => vec![0.5, 1.0, 2.0],
        _ => vec![1.5, 2.0, 3.0],
    }
}

fn lambda_values(id: StatementId, nu: f64, m: f64) -> Vec<f64> {
    use StatementId::*;
    let sigma = 0.5 * (1.0 + nu * m);
    match id {
        L3B | T1B | T4B | T3B | T7B => vec![-1.0, -0.5, 0.0],
        COR2 | AW1 | COR4B => vec![0.0],
        COR4A => {
            let lo = 0.5 * (1.0 + 2.0 * nu * m).sqrt();
            if sigma - lo < 1e-9 {
                Vec::new()
            } else {
                [0.1, 0.5, 0.9].iter().map(|f| lo + f * (sigma - lo)).collect()
            }
        }
        _ => vec![0.0, 0.5 * sigma, 0.9 * sigma],
    }
}

fn exponent_values(id: StatementId) -> Vec<Exponents> {
    if id.uses_r() {
        let mut out = Vec::new();
        for p in [1.0, 2.0, 3.0] {
            let mut rs = vec![1.0, 0.5 * (1.0 + p), p];
            rs.dedup();
            out.extend(rs.into_iter().map(|r| Exponents::new(Some(p), Some(r))));
        }
        out
    } else if id.uses_p() {
        [1.0, 2.0, 3.0].iter().map(|&p| Exponents::new(Some(p), None)).collect()
    } else {
        vec![Exponents::default()]
    }
}

/// The default parameter grid of a statement.
pub fn default_cells(id: StatementId) -> Vec<SweepCell> {
    use StatementId::*;
    if let Some(p) = id.canonical_params() {
        return vec![SweepCell::new(id, p, Exponents::default())];
    }
    if matches!(id, OPIAL6 | OPIAL7) {
        return vec![SweepCell::new(id, LambParams::new(0.0, 1.0, 0.0), Exponents::default())];
    }
    if id == M1SHARP {
        return m_values(id).into_iter().map(|m| SweepCell::new(id, LambParams::new(0.0, m, 0.0), Exponents::default())).collect();
    }
    let mut cells = Vec::new();
    for m in m_values(id) {
        for nu in nu_values(id, m) {
            for lambda in lambda_values(id, nu, m) {
                for ex in exponent_values(id) {
                    cells.push(SweepCell::new(id, LambParams::new(nu, m, lambda), ex));
                }
            }
        }
    }
    cells
}

/// Statements checked on segments.
pub const ONE_DIMENSIONAL: [StatementId; 18] = {
    use StatementId::*;
    [L3A, L3B, COR2, COR3, M1SHARP, T1A, T1B, EX1S, EX2S, EX3S, OPIAL6, OPIAL7, T2A, T2B, COR4A, COR4B, T3A, T3B]
};

/// Statements checked on domains.
pub const DOMAIN_STATEMENTS: [StatementId; 8] = {
    use StatementId::*;
    [T4A, T4B, T5, T6A, T6B, T7A, T7B, AW1]
};

struct Job<'a> {
    cell: &'a SweepCell,
    subject: Option<SubjectSpec>,
}

struct JobOutput {
    row: SweepRow,
    /// Domain integrals `(exponents, layer-cake value)` for the Monte Carlo check.
    integrals: Vec<(TermSpec, f64)>,
    radial: Option<RadialSubject>,
}

fn base_row(cell: &SweepCell, subject: &str) -> SweepRow {
    SweepRow {
        statement: cell.statement.name().to_string(),
        nu: cell.params.nu,
        m: cell.params.m,
        lambda: cell.params.lambda,
        p: cell.exponents.p,
        r: cell.exponents.r,
        subject: subject.to_string(),
        lhs: None,
        rhs: None,
        margin: None,
        tolerance: None,
        verdict: RowStatus::Skipped,
        reason: String::new(),
    }
}

fn build_subject(spec: &SubjectSpec, params: &LambParams) -> Result<Subject> {
    let f = if spec.function.trim().eq_ignore_ascii_case(OWN_PROFILE) {
        bessel_profile(params.nu, params.m, params.lambda)?
    } else {
        parse_function(&spec.function)?
    };
    match (&spec.segment, &spec.domain) {
        (Some((a, b)), None) => Ok(Subject::Segment(SegmentSubject::new(f, *a, *b)?)),
        (None, Some(d)) => Ok(Subject::Radial(radial_subject(make_domain(d)?, f)?)),
        _ => Err(Error::InvalidInput(format!("subject '{}' needs exactly one placement", spec.function))),
    }
}

fn spec_label(spec: &SubjectSpec) -> String {
    match (&spec.segment, &spec.domain) {
        (Some((a, b)), _) => format!("{} on [{a}, {b}]", spec.function),
        (_, Some(d)) => format!("{} on {d}", spec.function),
        _ => spec.function.clone(),
    }
}

fn comparison_row(cell: &SweepCell) -> SweepRow {
    let mut row = base_row(cell, "-");
    match corollary5_compare(&cell.params) {
        Ok(cmp) => {
            row.lhs = Some(cmp.lhs);
            row.rhs = Some(cmp.rhs);
            row.margin = Some(cmp.rhs - cmp.lhs);
            row.tolerance = Some(1e-12);
            row.verdict = if cmp.holds { RowStatus::Holds } else { RowStatus::ViolatedBeyondTolerance };
            if cmp.vacuous {
                row.reason = "condition 2(1 + nu m) - 4 lambda^2 <= 1 not met; reported only".into();
            }
        }
        Err(e) if e.is_input_error() => row.reason = e.to_string(),
        Err(e) => {
            row.verdict = RowStatus::NumericalFailure;
            row.reason = e.to_string();
        }
    }
    row
}

fn run_job(job: &Job, opts: &SweepOptions, cache: &IntegralCache) -> JobOutput {
    let cell = job.cell;
    let Some(spec) = &job.subject else {
        return JobOutput { row: comparison_row(cell), integrals: Vec::new(), radial: None };
    };
    let mut row = base_row(cell, &spec_label(spec));
    let none = |row| JobOutput { row, integrals: Vec::new(), radial: None };
    let res = match registry::resolve(cell.statement, &cell.params, &cell.exponents) {
        Ok(r) => r,
        Err(e) => {
            row.reason = e.to_string();
            return none(row);
        }
    };
    let subject = match build_subject(spec, &res.params) {
        Ok(s) => s,
        Err(e) => {
            row.reason = format!("subject: {e}");
            return none(row);
        }
    };
    row.subject = subject.describe();
    match evaluate_statement_cached(cell.statement, &cell.params, &cell.exponents, &subject, &opts.eval, cache) {
        Ok(rep) => {
            row.nu = rep.params.nu;
            row.m = rep.params.m;
            row.lambda = rep.params.lambda;
            row.p = rep.params.p;
            row.r = rep.params.r;
            row.lhs = rep.lhs;
            row.rhs = rep.rhs;
            row.margin = rep.margin;
            row.tolerance = rep.lhs.map(|_| rep.tolerance);
            row.verdict = rep.verdict.into();
            if rep.verdict == Verdict::Inadmissible {
                row.reason = rep.notes.last().cloned().unwrap_or_default();
            }
            let mut integrals = Vec::new();
            let mut radial = None;
            if let (Subject::Radial(rs), true) = (&subject, rep.verdict != Verdict::Inadmissible) {
                let c = constant_for(cell.statement, &res.params).unwrap_or(0.0);
                let active = registry::layout(cell.statement, &res, c).into_iter().filter(|t| t.base.abs() > ZERO_COEFF);
                let values = rep.terms.iter().filter_map(|t| t.integral);
                integrals = active.zip(values).collect();
                radial = Some(rs.clone());
            }
            JobOutput { row, integrals, radial }
        }
        Err(e) => {
            row.verdict = if e.is_input_error() { RowStatus::Skipped } else { RowStatus::NumericalFailure };
            row.reason = e.to_string();
            none(row)
        }
    }
}

/// Evaluates every cell on its subjects. `battery` applies to cells without
/// their own subjects; `None` uses [`default_battery`].
pub fn parameter_sweep(cells: &[SweepCell], battery: Option<&[SubjectSpec]>, opts: &SweepOptions) -> Result<SweepReport> {
    let mut jobs = Vec::new();
    for cell in cells {
        let kind = cell.statement.kind();
        if kind == SubjectKind::Comparison {
            jobs.push(Job { cell, subject: None });
            continue;
        }
        let specs: Vec<SubjectSpec> = match (&cell.subjects, battery) {
            (Some(s), _) => s.iter().flat_map(|s| s.expand(kind)).collect(),
            (None, Some(b)) => b.iter().flat_map(|s| s.expand(kind)).collect(),
            (None, None) => default_battery(kind),
        };
        jobs.extend(specs.into_iter().map(|s| Job { cell, subject: Some(s) }));
    }

    let cache = IntegralCache::new();
    let outputs: Vec<JobOutput> = jobs.par_iter().map(|j| run_job(j, opts, &cache)).collect();

    // unique domain integrals in first-appearance order
    let mut mc_jobs: Vec<(RadialSubject, TermSpec, f64)> = Vec::new();
    if opts.mc_samples.is_some() {
        let mut seen: HashMap<(String, u64, u64, u64), ()> = HashMap::new();
        for out in &outputs {
            if let Some(rs) = &out.radial {
                for (t, v) in &out.integrals {
                    let key = (rs.describe(), t.f_power.to_bits(), t.d_power.to_bits(), t.dist_power.to_bits());
                    if seen.insert(key, ()).is_none() {
                        mc_jobs.push((rs.clone(), t.clone(), *v));
                    }
                }
            }
        }
    }
    let samples = opts.mc_samples.unwrap_or(0);
    let mc_checks: Vec<McCheck> = mc_jobs
        .par_iter()
        .map(|(rs, t, lc)| {
            let (mc, se) = super::eval::term_monte_carlo(rs, t, samples, opts.seed);
            let ok = (lc - mc).abs() <= (0.01 * lc.abs()).max(3.0 * se);
            McCheck {
                subject: rs.describe(),
                integrand: t.integral_label(true, false),
                layer_cake: *lc,
                monte_carlo: mc,
                std_error: se,
                ok,
            }
        })
        .collect();

    let rows: Vec<SweepRow> = outputs.into_iter().map(|o| o.row).collect();
    let count = |s: RowStatus| rows.iter().filter(|r| r.verdict == s).count();
    let mut worst: Option<&SweepRow> = None;
    for r in &rows {
        if let (Some(m), RowStatus::Holds | RowStatus::ViolatedBeyondTolerance) = (r.margin, r.verdict) {
            if worst.is_none_or(|w| m < w.margin.unwrap_or(f64::INFINITY)) {
                worst = Some(r);
            }
        }
    }
    Ok(SweepReport {
        evaluated: count(RowStatus::Holds) + count(RowStatus::ViolatedBeyondTolerance),
        inadmissible: count(RowStatus::Inadmissible),
        skipped: count(RowStatus::Skipped),
        violations: count(RowStatus::ViolatedBeyondTolerance),
        numerical_failures: count(RowStatus::NumericalFailure),
        min_margin: worst.and_then(|w| w.margin),
        worst: worst.cloned(),
        mc_failures: mc_checks.iter().filter(|c| !c.ok).count(),
        mc_checks,
        rows,
    })
}

/// Sweeps the default grids of `ids` on the default battery.
pub fn default_sweep(ids: &[StatementId], opts: &SweepOptions) -> Result<SweepReport> {
    let cells: Vec<SweepCell> = ids.iter().flat_map(|&id| default_cells(id)).collect();
    parameter_sweep(&cells, None, opts)
}

fn grid_values(v: Option<&Value>, name: &str, default: Option<f64>) -> Result<Vec<Option<f64>>> {
    let bad = |msg: String| Error::InvalidInput(format!("grid field '{name}': {msg}"));
    let num = |x: &Value| x.as_f64().ok_or_else(|| bad(format!("expected a number, got {x}")));
    match v {
        None | Some(Value::Null) => Ok(vec![default]),
        Some(Value::Number(_)) => Ok(vec![Some(num(v.unwrap())?)]),
        Some(Value::Array(xs)) => {
            if xs.is_empty() {
                return Err(bad("empty list".into()));
            }
            xs.iter().map(|x| num(x).map(Some)).collect()
        }
        Some(Value::Object(o)) => {
            let from = num(o.get("from").ok_or_else(|| bad("range needs 'from'".into()))?)?;
            let to = num(o.get("to").ok_or_else(|| bad("range needs 'to'".into()))?)?;
            let steps = o
                .get("steps")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("range needs a nonnegative integer 'steps'".into()))?;
            if steps == 0 {
                return Ok(vec![Some(from)]);
            }
            Ok((0..=steps).map(|i| Some(from + (to - from) * i as f64 / steps as f64)).collect())
        }
        Some(other) => Err(bad(format!("expected a number, list or range, got {other}"))),
    }
}

fn string_list(v: Option<&Value>, name: &str) -> Result<Vec<String>> {
    match v {
        None | Some(Value::Null) => Ok(Vec::new()),
        Some(Value::String(s)) => Ok(vec![s.clone()]),
        Some(Value::Array(xs)) => xs
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::InvalidInput(format!("grid field '{name}': expected strings")))
            })
            .collect(),
        Some(other) => Err(Error::InvalidInput(format!("grid field '{name}': expected strings, got {other}"))),
    }
}

/// Expands a JSON grid into cells.
///
/// The grid is an array of objects. Each may carry `statement` (else
/// `default_statement` is used), `nu`, `m`, `lambda`, `p`, `r` as a number,
/// a list, or a range `{"from", "to", "steps"}` of `steps + 1` points
/// including both ends, plus optional `functions`, `segments` (`[[a, b]]`)
/// and `domains` defining the cell subjects. Fields expand as a Cartesian
/// product in the order `nu, m, lambda, p, r`.
pub fn expand_grid(text: &str, default_statement: Option<StatementId>) -> Result<Vec<SweepCell>> {
    let json: Value =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("grid is not valid JSON: {e}")))?;
    let entries = json.as_array().ok_or_else(|| Error::InvalidInput("grid must be a JSON array of cells".into()))?;
    let mut cells = Vec::new();
    for (i, entry) in entries.iter().enumerate() {
        let obj = entry
            .as_object()
            .ok_or_else(|| Error::InvalidInput(format!("grid cell {i} is not an object")))?;
        let known = ["statement", "nu", "m", "lambda", "p", "r", "functions", "segments", "domains"];
        if let Some(k) = obj.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::InvalidInput(format!("grid cell {i}: unknown field '{k}'")));
        }
        let statement = match obj.get("statement") {
            Some(Value::String(s)) => s.parse::<StatementId>()?,
            Some(other) => return Err(Error::InvalidInput(format!("grid cell {i}: bad statement {other}"))),
            None => default_statement
                .ok_or_else(|| Error::InvalidInput(format!("grid cell {i} has no statement")))?,
        };
        let nus = grid_values(obj.get("nu"), "nu", Some(0.0))?;
        let ms = grid_values(obj.get("m"), "m", Some(1.0))?;
        let lambdas = grid_values(obj.get("lambda"), "lambda", Some(0.0))?;
        let ps = grid_values(obj.get("p"), "p", None)?;
        let rs = grid_values(obj.get("r"), "r", None)?;

        let functions = string_list(obj.get("functions"), "functions")?;
        let domains = string_list(obj.get("domains"), "domains")?;
        let segments: Vec<(f64, f64)> = match obj.get("segments") {
            None | Some(Value::Null) => Vec::new(),
            Some(v) => serde_json::from_value(v.clone())
                .map_err(|e| Error::InvalidInput(format!("grid cell {i}: segments must be [[a, b], ...]: {e}")))?,
        };
        let subjects = if functions.is_empty() {
            if !segments.is_empty() || !domains.is_empty() {
                return Err(Error::InvalidInput(format!("grid cell {i}: placements given without functions")));
            }
            None
        } else {
            let mut out = Vec::new();
            for f in &functions {
                if segments.is_empty() && domains.is_empty() {
                    out.push(SubjectSpec::function(f));
                }
                out.extend(segments.iter().map(|&(a, b)| SubjectSpec::on_segment(f, a, b)));
                out.extend(domains.iter().map(|d| SubjectSpec::on_domain(f, d)));
            }
            Some(out)
        };

        for &nu in &nus {
            for &m in &ms {
                for &lambda in &lambdas {
                    for &p in &ps {
                        for &r in &rs {
                            let params = LambParams::new(nu.unwrap_or(0.0), m.unwrap_or(1.0), lambda.unwrap_or(0.0));
                            cells.push(SweepCell {
                                statement,
                                params,
                                exponents: Exponents::new(p, r),
                                subjects: subjects.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(cells)
}

use std::collections::HashMap;
use std::sync::Mutex;

use super::registry::{self, Exponents, StatementId, SubjectKind, TermSpec};
use super::report::{InequalityReport, ReportParams, TermValue, Verdict};
use crate::error::{Error, Result};
use crate::lamb::{constants::constant_for, LambParams};
use crate::quadrature::{self, IntegralResult, DEFAULT_REL_TOL_1D, DEFAULT_REL_TOL_ND};
use crate::subjects::{self, RadialSubject, SegmentSubject, Subject, TestFunction1D, ZERO_COEFF};

/// Quadrature tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub rel_tol_1d: f64,
    pub rel_tol_nd: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { rel_tol_1d: DEFAULT_REL_TOL_1D, rel_tol_nd: DEFAULT_REL_TOL_ND }
    }
}

type TermKey = (String, u64, u64, u64, u64);

/// Integral values shared by evaluations within one run. Keys identify the
/// subject and the integrand shape, so values never depend on which
/// evaluation filled them.
#[derive(Debug, Default)]
pub struct IntegralCache {
    map: Mutex<HashMap<TermKey, IntegralResult>>,
}

impl IntegralCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn get_or_compute<F>(&self, key: TermKey, compute: F) -> Result<IntegralResult>
    where
        F: FnOnce() -> Result<IntegralResult>,
    {
        if let Some(v) = self.map.lock().expect("cache lock").get(&key) {
            return Ok(*v);
        }
        let v = compute()?;
        self.map.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }
}

/// `|f|^a |f'|^b t^{−s}` evaluated through logarithms so that tiny `t` does
/// not overflow. A vanishing factor with positive power gives 0.
pub fn power_integrand(fv: f64, dv: f64, t: f64, a: f64, b: f64, s: f64) -> f64 {
    let mut l = 0.0;
    if a != 0.0 {
        let f = fv.abs();
        if f == 0.0 {
            return 0.0;
        }
        l += a * f.ln();
    }
    if b != 0.0 {
        let d = dv.abs();
        if d == 0.0 {
            return 0.0;
        }
        l += b * d.ln();
    }
    if s != 0.0 {
        l -= s * t.ln();
    }
    l.exp()
}

fn right_flag(u: &TestFunction1D, term: &TermSpec) -> bool {
    match u.decay_right() {
        Some(d) if d.is_finite() => subjects::endpoint_exponent(term, d, 0.0) < 1.0,
        _ => false,
    }
}

fn one_sided_integral(seg: &SegmentSubject, term: &TermSpec, rel_tol: f64) -> Result<IntegralResult> {
    let u = &seg.base;
    let len = seg.length();
    let (a, b, s) = (term.f_power, term.d_power, term.dist_power);
    let breaks: Vec<f64> = u.critical_points().iter().map(|x| x * len).collect();
    quadrature::integrate_with_breakpoints(
        |t| {
            let x = t / len;
            power_integrand(u.eval(x), u.deriv(x) / len, t, a, b, s)
        },
        0.0,
        len,
        &breaks,
        true,
        right_flag(u, term),
        rel_tol,
    )
}

fn two_sided_integral(seg: &SegmentSubject, term: &TermSpec, rel_tol: f64) -> Result<IntegralResult> {
    let u = &seg.base;
    let len = seg.length();
    let d0 = seg.delta0();
    let (a, b, s) = (term.f_power, term.d_power, term.dist_power);
    // both halves folded onto the distance variable t ∈ (0, δ₀)
    let breaks: Vec<f64> = u.critical_points().iter().map(|x| len * x.min(1.0 - x)).collect();
    quadrature::integrate_with_breakpoints(
        |t| {
            let x = t / len;
            power_integrand(u.eval(x), u.deriv(x) / len, t, a, b, s)
                + power_integrand(u.eval_rev(x), u.deriv_rev(x) / len, t, a, b, s)
        },
        0.0,
        d0,
        &breaks,
        true,
        false,
        rel_tol,
    )
}

fn radial_integral(rs: &RadialSubject, term: &TermSpec, rel_tol: f64) -> Result<IntegralResult> {
    let u = &rs.profile;
    let d0 = rs.domain.inradius();
    let (a, b, s) = (term.f_power, term.d_power, term.dist_power);
    let breaks: Vec<f64> = u.critical_points().iter().map(|x| x * d0).collect();
    quadrature::layer_cake_with_breakpoints(
        &rs.domain,
        |t| {
            let x = t / d0;
            power_integrand(u.eval(x), u.deriv(x) / d0, t, a, b, s)
        },
        &breaks,
        right_flag(u, term),
        rel_tol,
    )
}

/// `∫ |f|^a |f'|^b / δ^s` for one term over the subject, with `δ` the
/// statement's distance (`x − a` for one-sided statements).
pub fn term_integral(subject: &Subject, kind: SubjectKind, term: &TermSpec, opts: &EvalOptions) -> Result<IntegralResult> {
    if subject.profile().is_zero() {
        return Ok(IntegralResult::ZERO);
    }
    match (subject, kind) {
        (Subject::Segment(seg), SubjectKind::OneSided) => one_sided_integral(seg, term, opts.rel_tol_1d),
        (Subject::Segment(seg), SubjectKind::TwoSided) => two_sided_integral(seg, term, opts.rel_tol_1d),
        (Subject::Radial(rs), SubjectKind::Domain) => radial_integral(rs, term, opts.rel_tol_nd),
        _ => Err(Error::InvalidInput(format!("subject {} does not fit a {kind:?} statement", subject.describe()))),
    }
}

fn term_key(subject: &Subject, kind: SubjectKind, term: &TermSpec, opts: &EvalOptions) -> TermKey {
    let tol = if kind == SubjectKind::Domain { opts.rel_tol_nd } else { opts.rel_tol_1d };
    (
        format!("{kind:?}|{}", subject.describe()),
        term.f_power.to_bits(),
        term.d_power.to_bits(),
        term.dist_power.to_bits(),
        tol.to_bits(),
    )
}

/// Monte Carlo estimate of a domain term, `(value, standard error)`.
pub fn term_monte_carlo(rs: &RadialSubject, term: &TermSpec, samples: usize, seed: u64) -> (f64, f64) {
    let (a, b, s) = (term.f_power, term.d_power, term.dist_power);
    quadrature::monte_carlo_integral(
        &rs.domain,
        |x| {
            let d = rs.domain.dist(x);
            power_integrand(rs.value(x), rs.gradient_magnitude(x), d, a, b, s)
        },
        samples,
        seed,
    )
}

fn scale_length(subject: &Subject, kind: SubjectKind) -> f64 {
    match (subject, kind) {
        (Subject::Segment(seg), SubjectKind::OneSided) => seg.length(),
        (Subject::Segment(seg), _) => seg.delta0(),
        (Subject::Radial(rs), _) => rs.domain.inradius(),
    }
}

/// Evaluates both sides of `stmt` on `subject`.
pub fn evaluate_statement(
    stmt: StatementId,
    params: &LambParams,
    extra: &Exponents,
    subject: &Subject,
    opts: &EvalOptions,
) -> Result<InequalityReport> {
    evaluate_statement_cached(stmt, params, extra, subject, opts, &IntegralCache::new())
}

/// [`evaluate_statement`] sharing integrals through `cache`.
pub fn evaluate_statement_cached(
    stmt: StatementId,
    params: &LambParams,
    extra: &Exponents,
    subject: &Subject,
    opts: &EvalOptions,
    cache: &IntegralCache,
) -> Result<InequalityReport> {
    let kind = stmt.kind();
    let fits = matches!(
        (kind, subject),
        (SubjectKind::OneSided | SubjectKind::TwoSided, Subject::Segment(_)) | (SubjectKind::Domain, Subject::Radial(_))
    );
    if !fits {
        return Err(Error::InvalidInput(format!(
            "{stmt} cannot be evaluated on {} ({kind:?} statement)",
            subject.describe()
        )));
    }
    let res = registry::resolve(stmt, params, extra)?;
    let c = constant_for(stmt, &res.params)?;
    let layout = registry::layout(stmt, &res, c);

    let mut report = InequalityReport {
        statement: stmt.name().to_string(),
        params: ReportParams {
            nu: res.params.nu,
            m: res.params.m,
            lambda: res.params.lambda,
            p: res.p,
            r: res.r,
        },
        subject: subject.describe(),
        lamb_constant: registry::needs_lamb_constant(stmt).then_some(c),
        terms: Vec::new(),
        lhs: None,
        rhs: None,
        margin: None,
        tolerance: 0.0,
        verdict: Verdict::Inadmissible,
        notes: Vec::new(),
    };
    if res.boundary {
        report.notes.push("nu = 1/m: accepted through the union of the printed hypothesis sets".into());
    }
    if matches!(stmt, StatementId::EX2S | StatementId::EX3S | StatementId::COR4B) {
        report.notes.push("limiting case lambda = (1 + nu m)/2, Lamb constant 0".into());
    }
    if stmt.canonical_params().is_some() && res.params != *params {
        report.notes.push("parameters fixed by the statement".into());
    }

    let adm = subjects::admissible_terms(subject.profile(), kind, &layout);
    if !adm.ok {
        report.notes.push(adm.reason);
        return Ok(report);
    }

    let one_sided = kind == SubjectKind::OneSided;
    let domain = kind == SubjectKind::Domain;
    let len = scale_length(subject, kind);
    for term in &layout {
        let coefficient = term.coefficient(len);
        let integrand = term.integral_label(domain, one_sided);
        if term.base.abs() <= ZERO_COEFF {
            report.terms.push(TermValue {
                side: term.side,
                coefficient_name: term.name.clone(),
                coefficient,
                integrand,
                integral: None,
                error_estimate: 0.0,
                value: 0.0,
            });
            continue;
        }
        let key = term_key(subject, kind, term, opts);
        let r = match cache.get_or_compute(key, || term_integral(subject, kind, term, opts)) {
            Ok(r) => r,
            Err(Error::Accuracy { best, error }) => {
                report.notes.push(format!(
                    "quadrature for {integrand} did not converge (best {best}, error {error})"
                ));
                return Err(Error::Numerical {
                    message: format!("{stmt}: quadrature failed on {}", subject.describe()),
                    partial: Some(Box::new(report)),
                });
            }
            Err(e) => return Err(e),
        };
        report.terms.push(TermValue {
            side: term.side,
            coefficient_name: term.name.clone(),
            coefficient,
            integrand,
            integral: Some(r.value),
            error_estimate: r.error_estimate,
            value: coefficient * r.value,
        });
    }
    report.finish();
    Ok(report)
}

/// Terms of `stmt` that are actually integrated (nonzero coefficient).
pub fn active_terms(stmt: StatementId, params: &LambParams, extra: &Exponents) -> Result<Vec<TermSpec>> {
    let res = registry::resolve(stmt, params, extra)?;
    let c = constant_for(stmt, &res.params)?;
    Ok(registry::layout(stmt, &res, c).into_iter().filter(|t| t.base.abs() > ZERO_COEFF).collect())
}

/// Sides of a report as `(lhs, rhs)`; both zero for an inadmissible one.
pub fn sides(report: &InequalityReport) -> (f64, f64) {
    (report.lhs.unwrap_or(0.0), report.rhs.unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::registry::Side;
    use crate::subjects::{make_domain, make_test_function, parse_function, radial_subject, Family};

    fn seg(spec: &str, a: f64, b: f64) -> Subject {
        Subject::Segment(SegmentSubject::new(parse_function(spec).unwrap(), a, b).unwrap())
    }

    #[test]
    fn equality_witness() {
        let s = seg("smoothtent:2", -1.0, 1.0);
        let r = evaluate_statement(
            StatementId::EX3S,
            &LambParams::new(0.0, 1.0, 0.5),
            &Exponents::default(),
            &s,
            &EvalOptions::default(),
        )
        .unwrap();
        assert!((r.lhs.unwrap() - 2.0).abs() < 1e-9, "{r:?}");
        assert!((r.rhs.unwrap() - 2.0).abs() < 1e-9);
        assert!(r.margin.unwrap().abs() <= 1e-8);
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn zero_subject() {
        let s = seg("zero", 0.0, 1.0);
        let r = evaluate_statement(
            StatementId::L3A,
            &LambParams::new(1.0, 1.0, 0.0),
            &Exponents::default(),
            &s,
            &EvalOptions::default(),
        )
        .unwrap();
        assert_eq!((r.lhs, r.rhs, r.margin), (Some(0.0), Some(0.0), Some(0.0)));
    }

    #[test]
    fn lemma_on_power_bump() {
        let s = seg("powerbump:2,1", 0.0, 1.0);
        let r = evaluate_statement(
            StatementId::L3A,
            &LambParams::new(1.0, 1.0, 0.0),
            &Exponents::default(),
            &s,
            &EvalOptions::default(),
        )
        .unwrap();
        assert!(r.margin.unwrap() >= 0.0);
        // ∫ x^2(1-x)/x^1 dx = 1/6 with m = 1 and c = j0/2
        let rem = &r.terms[1];
        assert!((rem.integral.unwrap() - 1.0 / 6.0).abs() < 1e-12);
        // hardy coefficient vanishes at nu m = 1, so the term is skipped
        assert!(r.terms[0].integral.is_none());
    }

    #[test]
    fn inadmissible_report() {
        let s = seg("powerbump:1,1", 0.0, 1.0);
        let r = evaluate_statement(
            StatementId::L3A,
            &LambParams::new(0.5, 1.0, 0.2),
            &Exponents::default(),
            &s,
            &EvalOptions::default(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Inadmissible);
        assert!(r.lhs.is_none());
    }

    #[test]
    fn wrong_subject_kind() {
        let s = seg("powerbump:2,1", 0.0, 1.0);
        let e = evaluate_statement(
            StatementId::T7A,
            &LambParams::new(0.25, 2.0, 0.1),
            &Exponents::default(),
            &s,
            &EvalOptions::default(),
        );
        assert!(matches!(e, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn radial_reduction_examples() {
        // Ball(2,1) with u(t) = t^2: ∫ F = π/6
        let rs = radial_subject(
            make_domain("ball:2,1").unwrap(),
            make_test_function(Family::PowerBump { alpha: 2.0, beta: 0.0 }).unwrap(),
        )
        .unwrap();
        let t = TermSpec { side: Side::Lhs, name: "1".into(), base: 1.0, scale_power: 0.0, f_power: 1.0, d_power: 0.0, dist_power: 0.0 };
        let v = term_integral(&Subject::Radial(rs.clone()), SubjectKind::Domain, &t, &EvalOptions::default()).unwrap();
        assert!((v.value - std::f64::consts::PI / 6.0).abs() < 1e-9);
        // Box(1,1) with u(t) = t: ∫ |∇F|^2 = 4
        let sq = radial_subject(
            make_domain("box:1x1").unwrap(),
            make_test_function(Family::PowerBump { alpha: 1.0, beta: 0.0 }).unwrap(),
        )
        .unwrap();
        let g = TermSpec { d_power: 2.0, f_power: 0.0, ..t };
        let v = term_integral(&Subject::Radial(sq.clone()), SubjectKind::Domain, &g, &EvalOptions::default()).unwrap();
        assert!((v.value - 4.0).abs() < 1e-9);
        let (mc, se) = term_monte_carlo(&sq, &g, 20_000, 42);
        assert!((mc - 4.0).abs() < 1e-12 && se < 1e-12);
    }

    #[test]
    fn power_integrand_edge_cases() {
        assert_eq!(power_integrand(0.0, 1.0, 0.5, 1.0, 0.0, 2.0), 0.0);
        assert_eq!(power_integrand(1.0, 0.0, 0.5, 1.0, 1.0, 2.0), 0.0);
        assert_eq!(power_integrand(0.0, 0.0, 0.5, 0.0, 0.0, 0.0), 1.0);
        assert!((power_integrand(2.0, 3.0, 0.5, 2.0, 1.0, 1.0) - 24.0).abs() < 1e-13);
        assert!(power_integrand(1e-200, 1.0, 1e-200, 1.0, 0.0, 1.5).is_finite());
    }
}

//! Test functions, convex domains and the subjects statements are
//! evaluated on.
//!
//! Domain subjects are distance-radial: `F(x) = u(δ(x)/δ₀)`. They are
//! Lipschitz rather than C¹ with compact support; the inequalities extend
//! to them by density, with `|∇F| = |u'(δ/δ₀)|/δ₀` almost everywhere since
//! `|∇δ| = 1` a.e. in a convex domain.

mod domain;
mod function;
mod parse;

pub use domain::{unit_sphere_area, ConvexDomain, DomainKind, MAX_DIM};
pub use function::{bessel_profile, make_test_function, Family, TestFunction1D};
pub use parse::{make_domain, parse_function, parse_segment};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lamb::{statement_constants, LambParams};
use crate::statements::registry::{self, Exponents, StatementId, SubjectKind, TermSpec};

/// A test function transplanted to `[a, b]`: `g(x) = u((x − a)/(b − a))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentSubject {
    pub base: TestFunction1D,
    pub a: f64,
    pub b: f64,
}

impl SegmentSubject {
    pub fn new(base: TestFunction1D, a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInput(format!("segment needs a < b, got [{a}, {b}]")));
        }
        Ok(SegmentSubject { base, a, b })
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn value(&self, x: f64) -> f64 {
        self.base.eval((x - self.a) / self.length())
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.base.deriv((x - self.a) / self.length()) / self.length()
    }

    /// `min(x − a, b − x)`.
    pub fn delta(&self, x: f64) -> f64 {
        (x - self.a).min(self.b - x)
    }

    /// `(b − a)/2`.
    pub fn delta0(&self) -> f64 {
        0.5 * self.length()
    }

    pub fn describe(&self) -> String {
        format!("{} on [{}, {}]", self.base.label(), self.a, self.b)
    }
}

/// `F(x) = u(δ(x)/δ₀)` on a convex domain.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSubject {
    pub domain: ConvexDomain,
    pub profile: TestFunction1D,
}

impl RadialSubject {
    pub fn value(&self, x: &[f64]) -> f64 {
        let d = self.domain.dist(x);
        if d <= 0.0 {
            return 0.0;
        }
        self.profile.eval(d / self.domain.inradius())
    }

    /// `|∇F|(x)`, defined almost everywhere.
    pub fn gradient_magnitude(&self, x: &[f64]) -> f64 {
        let d = self.domain.dist(x);
        if d <= 0.0 {
            return 0.0;
        }
        let d0 = self.domain.inradius();
        self.profile.deriv(d / d0).abs() / d0
    }

    pub fn describe(&self) -> String {
        format!("{} on {}", self.profile.label(), self.domain.label())
    }
}

/// Builds a radial subject; the profile must vanish at 0 so that `F`
/// vanishes on the boundary.
pub fn radial_subject(domain: ConvexDomain, profile: TestFunction1D) -> Result<RadialSubject> {
    let u0 = profile.eval(0.0);
    if u0 != 0.0 {
        return Err(Error::InvalidInput(format!(
            "radial profile {} must vanish at 0, got u(0) = {u0}",
            profile.label()
        )));
    }
    Ok(RadialSubject { domain, profile })
}

/// Anything a statement can be evaluated on.
#[derive(Debug, Clone, PartialEq)]
pub enum Subject {
    Segment(SegmentSubject),
    Radial(RadialSubject),
}

impl Subject {
    pub fn profile(&self) -> &TestFunction1D {
        match self {
            Subject::Segment(s) => &s.base,
            Subject::Radial(r) => &r.profile,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Subject::Segment(s) => s.describe(),
            Subject::Radial(r) => r.describe(),
        }
    }
}

/// Outcome of an admissibility check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub ok: bool,
    pub reason: String,
}

impl Admissibility {
    fn yes() -> Self {
        Admissibility { ok: true, reason: "all integrals finite".into() }
    }

    fn no(reason: String) -> Self {
        Admissibility { ok: false, reason }
    }
}

/// Coefficients below this are treated as exact zeros: the term is
/// dropped rather than checked for integrability.
pub const ZERO_COEFF: f64 = 1e-14;

/// Endpoint integrability of `|u|^a |u'|^b / t^s` when `u ~ t^d`: the
/// integrand behaves like `t^{ad + b(d−1) − s}`.
pub(crate) fn endpoint_exponent(term: &TermSpec, d: f64, s: f64) -> f64 {
    let mut e = -s;
    if term.f_power != 0.0 {
        e += term.f_power * d;
    }
    if term.d_power != 0.0 {
        e += term.d_power * (d - 1.0);
    }
    e
}

/// Checks that every term of a layout is finite for `u`.
pub fn admissible_terms(u: &TestFunction1D, kind: SubjectKind, terms: &[TermSpec]) -> Admissibility {
    if u.is_zero() {
        return Admissibility::yes();
    }
    if kind == SubjectKind::TwoSided && !matches!(u.decay_right(), Some(d) if d > 0.0) {
        return Admissibility::no(format!("{} does not vanish at the right endpoint", u.label()));
    }
    let one_sided = kind == SubjectKind::OneSided;
    let domain = kind == SubjectKind::Domain;
    let left_name = match kind {
        SubjectKind::Domain => "the boundary",
        _ => "the left endpoint",
    };
    let mut problems = Vec::new();
    for t in terms {
        if t.base.abs() <= ZERO_COEFF {
            continue;
        }
        let label = t.integral_label(domain, one_sided);
        let e = endpoint_exponent(t, u.decay_left(), t.dist_power);
        if e <= -1.0 + 1e-12 {
            problems.push(format!("{label} diverges at {left_name} (integrand ~ t^{e:.4}, needs > -1)"));
        }
        if let Some(dr) = u.decay_right() {
            // the weight is singular at the right end only for two-sided subjects
            let s = if kind == SubjectKind::TwoSided { t.dist_power } else { 0.0 };
            let e = endpoint_exponent(t, dr, s);
            let where_ = if domain { "the centre" } else { "the right endpoint" };
            if e <= -1.0 + 1e-12 {
                problems.push(format!("{label} diverges at {where_} (integrand ~ t^{e:.4}, needs > -1)"));
            }
        }
    }
    if problems.is_empty() {
        Admissibility::yes()
    } else {
        Admissibility::no(problems.join("; "))
    }
}

/// Whether every integral of `stmt` is finite for this subject at the given
/// parameters. Parameters outside the statement's validity set are reported
/// as not admissible with the violated predicate.
pub fn admissible(subject: &Subject, stmt: StatementId, params: &LambParams, extra: &Exponents) -> Admissibility {
    let kind = stmt.kind();
    match (kind, subject) {
        (SubjectKind::Comparison, _) => {
            return Admissibility::no(format!("{stmt} compares constants and takes no subject"))
        }
        (SubjectKind::Domain, Subject::Segment(_)) => {
            return Admissibility::no(format!("{stmt} needs a domain subject"))
        }
        (SubjectKind::OneSided | SubjectKind::TwoSided, Subject::Radial(_)) => {
            return Admissibility::no(format!("{stmt} needs a segment subject"))
        }
        _ => {}
    }
    let res = match registry::resolve(stmt, params, extra) {
        Ok(r) => r,
        Err(e) => return Admissibility::no(e.to_string()),
    };
    // the integrability pattern depends on which coefficients vanish, not on c
    let c = match statement_constants(params, stmt, extra) {
        Ok(cs) => cs.c,
        Err(e) => return Admissibility::no(e.to_string()),
    };
    admissible_terms(subject.profile(), kind, &registry::layout(stmt, &res, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(fam: Family, a: f64, b: f64) -> Subject {
        Subject::Segment(SegmentSubject::new(make_test_function(fam).unwrap(), a, b).unwrap())
    }

    #[test]
    fn lemma_admissibility_examples() {
        let p = LambParams::new(1.0, 1.0, 0.0);
        let ex = Exponents::default();
        let ok = admissible(&seg(Family::PowerBump { alpha: 2.0, beta: 1.0 }, 0.0, 1.0), StatementId::L3A, &p, &ex);
        assert!(ok.ok, "{}", ok.reason);
        let p = LambParams::new(0.5, 1.0, 0.2);
        let bad = admissible(&seg(Family::PowerBump { alpha: 1.0, beta: 1.0 }, 0.0, 1.0), StatementId::L3A, &p, &ex);
        assert!(!bad.ok);
        assert!(bad.reason.contains("|f'| / x"), "{}", bad.reason);
    }

    #[test]
    fn limiting_segment_admissibility() {
        let p = LambParams::new(0.0, 1.0, 0.5);
        let ex = Exponents::default();
        let a = admissible(&seg(Family::PowerBump { alpha: 1.0, beta: 1.0 }, -1.0, 1.0), StatementId::EX3S, &p, &ex);
        assert!(!a.ok);
        // the exponent rule also rejects (1,2): the left end still has decay 1
        let a = admissible(&seg(Family::PowerBump { alpha: 1.0, beta: 2.0 }, -1.0, 1.0), StatementId::EX3S, &p, &ex);
        assert!(!a.ok);
        let a = admissible(&seg(Family::PowerBump { alpha: 2.0, beta: 2.0 }, -1.0, 1.0), StatementId::EX3S, &p, &ex);
        assert!(a.ok);
        let a = admissible(&seg(Family::SmoothTent { k: 2.0 }, -1.0, 1.0), StatementId::EX3S, &p, &ex);
        assert!(a.ok);
    }

    #[test]
    fn two_sided_needs_right_zero() {
        let p = LambParams::new(0.5, 1.0, 0.2);
        let a = admissible(&seg(Family::PowerBump { alpha: 2.0, beta: 0.0 }, 0.0, 1.0), StatementId::T1A, &p, &Exponents::default());
        assert!(!a.ok);
        assert!(a.reason.contains("right endpoint"));
    }

    #[test]
    fn kind_mismatch() {
        let p = LambParams::new(0.5, 2.0, 0.2);
        let a = admissible(&seg(Family::SinePower { alpha: 2.0 }, 0.0, 1.0), StatementId::T7A, &p, &Exponents::default());
        assert!(!a.ok);
    }

    #[test]
    fn radial_subject_examples() {
        let d = make_domain("box:1x1").unwrap();
        let u = make_test_function(Family::PowerBump { alpha: 1.0, beta: 0.0 }).unwrap();
        let s = radial_subject(d, u).unwrap();
        assert_eq!(s.gradient_magnitude(&[0.2, 0.3]), 2.0);
        assert!((s.value(&[0.2, 0.3]) - 0.4).abs() < 1e-15);
        let ball = make_domain("ball:2,1").unwrap();
        let b = bessel_profile(1.0, 1.0, 0.0).unwrap();
        assert!(radial_subject(ball, b).is_ok());
    }

    #[test]
    fn bessel_profile_is_never_l1_admissible() {
        // u'/x behaves like x^{(νm−3)/2}, never integrable for νm <= 1
        let p = LambParams::new(1.0, 1.0, 0.0);
        let b = bessel_profile(1.0, 1.0, 0.0).unwrap();
        let s = Subject::Segment(SegmentSubject::new(b, 0.0, 1.0).unwrap());
        assert!(!admissible(&s, StatementId::L3A, &p, &Exponents::default()).ok);
        assert!(admissible(&s, StatementId::OPIAL7, &p, &Exponents::default()).ok);
    }
}

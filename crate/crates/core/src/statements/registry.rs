//! The catalogue of inequalities: identifiers, validity predicates and the
//! term layout of each side.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lamb::LambParams;

/// Identifier of a registered inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum StatementId {
    L3A,
    L3B,
    COR2,
    COR3,
    M1SHARP,
    T1A,
    T1B,
    EX1S,
    EX2S,
    EX3S,
    OPIAL6,
    OPIAL7,
    T2A,
    T2B,
    COR4A,
    COR4B,
    T3A,
    T3B,
    T4A,
    T4B,
    T5,
    T6A,
    T6B,
    T7A,
    T7B,
    AW1,
    COR5,
}

/// What a statement is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubjectKind {
    /// `f(a) = 0` on `[a, b]`, weights in `x − a`.
    OneSided,
    /// `f(a) = f(b) = 0`, weights in `δ(x) = min(x − a, b − x)`.
    TwoSided,
    /// Distance-radial function on a convex domain.
    Domain,
    /// A comparison of constants, no subject.
    Comparison,
}

impl StatementId {
    pub const ALL: [StatementId; 27] = [
        StatementId::L3A,
        StatementId::L3B,
        StatementId::COR2,
        StatementId::COR3,
        StatementId::M1SHARP,
        StatementId::T1A,
        StatementId::T1B,
        StatementId::EX1S,
        StatementId::EX2S,
        StatementId::EX3S,
        StatementId::OPIAL6,
        StatementId::OPIAL7,
        StatementId::T2A,
        StatementId::T2B,
        StatementId::COR4A,
        StatementId::COR4B,
        StatementId::T3A,
        StatementId::T3B,
        StatementId::T4A,
        StatementId::T4B,
        StatementId::T5,
        StatementId::T6A,
        StatementId::T6B,
        StatementId::T7A,
        StatementId::T7B,
        StatementId::AW1,
        StatementId::COR5,
    ];

    pub fn name(&self) -> &'static str {
        use StatementId::*;
        match self {
            L3A => "L3A",
            L3B => "L3B",
            COR2 => "COR2",
            COR3 => "COR3",
            M1SHARP => "M1SHARP",
            T1A => "T1A",
            T1B => "T1B",
            EX1S => "EX1S",
            EX2S => "EX2S",
            EX3S => "EX3S",
            OPIAL6 => "OPIAL6",
            OPIAL7 => "OPIAL7",
            T2A => "T2A",
            T2B => "T2B",
            COR4A => "COR4A",
            COR4B => "COR4B",
            T3A => "T3A",
            T3B => "T3B",
            T4A => "T4A",
            T4B => "T4B",
            T5 => "T5",
            T6A => "T6A",
            T6B => "T6B",
            T7A => "T7A",
            T7B => "T7B",
            AW1 => "AW1",
            COR5 => "COR5",
        }
    }

    pub fn kind(&self) -> SubjectKind {
        use StatementId::*;
        match self {
            L3A | L3B | COR2 | COR3 | M1SHARP | OPIAL6 | OPIAL7 => SubjectKind::OneSided,
            T1A | T1B | EX1S | EX2S | EX3S | T2A | T2B | COR4A | COR4B | T3A | T3B => {
                SubjectKind::TwoSided
            }
            T4A | T4B | T5 | T6A | T6B | T7A | T7B | AW1 => SubjectKind::Domain,
            COR5 => SubjectKind::Comparison,
        }
    }

    /// Short human description of the statement.
    pub fn summary(&self) -> &'static str {
        use StatementId::*;
        match self {
            L3A => "L1 Hardy inequality with Bessel remainder on [0,1], lambda in [0, (1+nu m)/2)",
            L3B => "L1 Hardy inequality with Bessel remainder on [0,1], lambda <= 0",
            COR2 => "L1 Hardy inequality with the classical Lamb constant (lambda = 0)",
            COR3 => "L1 Hardy inequality with the enlarged remainder c^2 + (m-1)(lambda - lambda^2)",
            M1SHARP => "(m-1) int |f|/x^(2-m) <= int |f'| for m > 1",
            T1A => "two-sided L1 inequality in the distance to the endpoints, lambda >= 0",
            T1B => "two-sided L1 inequality in the distance to the endpoints, lambda <= 0",
            EX1S => "L1 inequality on [-1,1] with constant j1'^2/3",
            EX2S => "limit lambda -> 1 of the nu = m = 1 segment inequality",
            EX3S => "limit lambda -> 1/2 of the nu = 0, m = 1 segment inequality",
            OPIAL6 => "Opial inequality int |f f'|/x <= 2 int f'^2",
            OPIAL7 => "Opial inequality int |f f'| <= (rho/2) int f'^2",
            T2A => "Lp inequality with mixed power r",
            T2B => "Lp inequality with mixed power r, normalized Hardy term (nu < 1/m)",
            COR4A => "Lp inequality with r = p under 2(1+nu m) - 4 lambda^2 <= 1",
            COR4B => "Lp inequality with r = p at lambda = (1+nu m)/2",
            T3A => "L2 inequality, lambda >= 0",
            T3B => "L2 inequality, lambda <= 0",
            T4A => "L1 inequality on convex domains, lambda >= 0",
            T4B => "L1 inequality on convex domains, lambda <= 0",
            T5 => "L1 inequality on convex domains with enlarged remainder",
            T6A => "Lp inequality on convex domains",
            T6B => "Lp inequality on convex domains, normalized Hardy term (nu < 1/m)",
            T7A => "L2 inequality on convex domains, lambda >= 0",
            T7B => "L2 inequality on convex domains, lambda <= 0",
            AW1 => "L2 inequality with the classical Lamb constant on convex domains",
            COR5 => "comparison c^2 + (m-1)(lambda - lambda^2) <= C^2",
        }
    }

    /// Whether the statement takes the exponent `p` (and `r`).
    pub fn uses_p(&self) -> bool {
        use StatementId::*;
        matches!(self, T2A | T2B | COR4A | COR4B | T6A | T6B)
    }

    pub fn uses_r(&self) -> bool {
        matches!(self, StatementId::T2A | StatementId::T2B)
    }

    /// Statements whose parameters are fixed by definition.
    pub fn canonical_params(&self) -> Option<LambParams> {
        match self {
            StatementId::EX1S => Some(LambParams::new(1.0, 1.0, 0.5)),
            StatementId::EX2S => Some(LambParams::new(1.0, 1.0, 1.0)),
            StatementId::EX3S => Some(LambParams::new(0.0, 1.0, 0.5)),
            _ => None,
        }
    }

    pub fn one_dimensional(&self) -> bool {
        matches!(self.kind(), SubjectKind::OneSided | SubjectKind::TwoSided)
    }

    pub fn valid_names() -> String {
        let mut names: Vec<&str> = Self::ALL.iter().map(|s| s.name()).collect();
        names.extend(["SPECIAL1", "SPECIAL2", "SPECIAL3"]);
        names.join(", ")
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatementId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        // the introductory special cases are the domain Lp and L2 statements
        let aliased = match upper.as_str() {
            "SPECIAL1" => "T6A",
            "SPECIAL2" => "T6B",
            "SPECIAL3" => "T7A",
            other => other,
        };
        StatementId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == aliased)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown statement '{s}'; valid names: {}",
                    StatementId::valid_names()
                ))
            })
    }
}

/// Exponents of the Lp statements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct Exponents {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
}

impl Exponents {
    pub fn new(p: Option<f64>, r: Option<f64>) -> Self {
        Exponents { p, r }
    }
}

/// Which side of the inequality a term belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lhs,
    Rhs,
}

/// One term `coefficient/δ₀^k · ∫ |f|^a |f'|^b / δ^s`.
#[derive(Debug, Clone, PartialEq)]
pub struct TermSpec {
    pub side: Side,
    pub name: String,
    /// Coefficient before the inradius scaling.
    pub base: f64,
    /// The coefficient is divided by `δ₀^k` (or `ρ^k` for one-sided terms).
    pub scale_power: f64,
    pub f_power: f64,
    pub d_power: f64,
    pub dist_power: f64,
}

impl TermSpec {
    fn new(side: Side, name: impl Into<String>, base: f64, k: f64, a: f64, b: f64, s: f64) -> Self {
        TermSpec { side, name: name.into(), base, scale_power: k, f_power: a, d_power: b, dist_power: s }
    }

    /// `base / δ₀^k`.
    pub fn coefficient(&self, delta0: f64) -> f64 {
        if self.scale_power == 0.0 {
            self.base
        } else {
            self.base / delta0.powf(self.scale_power)
        }
    }

    /// Readable form of the integral, e.g. `int |f|^2 / d^(2-m)`.
    pub fn integral_label(&self, domain: bool, one_sided: bool) -> String {
        let d = if one_sided { "x" } else { "d" };
        let grad = if domain { "|grad f|" } else { "|f'|" };
        let mut factors = Vec::new();
        if self.f_power != 0.0 {
            factors.push(power_label("|f|", self.f_power));
        }
        if self.d_power != 0.0 {
            factors.push(power_label(grad, self.d_power));
        }
        let num = if factors.is_empty() { "1".to_string() } else { factors.join(" ") };
        if self.dist_power == 0.0 {
            format!("int {num}")
        } else {
            format!("int {num} / {}", power_label(d, self.dist_power))
        }
    }
}

fn power_label(base: &str, e: f64) -> String {
    if e == 1.0 {
        base.to_string()
    } else {
        format!("{base}^{}", fmt_num(e))
    }
}

fn fmt_num(x: f64) -> String {
    let s = format!("{x}");
    if s.contains('-') || s.contains('.') {
        format!("({s})")
    } else {
        s
    }
}

/// Parameters after applying a statement's conventions (fixed canonical
/// values, limits, forced λ), plus the exponents actually used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolved {
    pub params: LambParams,
    pub p: Option<f64>,
    pub r: Option<f64>,
    /// Cell lies on a boundary accepted only through the union of printed
    /// hypothesis sets.
    pub boundary: bool,
}

const EPS: f64 = 1e-12;

fn need(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("requires {what}")))
    }
}

fn nu_open_left(p: &LambParams) -> Result<()> {
    need(p.nu > 0.0 && p.nu * p.m <= 1.0 + EPS, "nu in (0, 1/m]")
}

fn nu_closed(p: &LambParams) -> Result<()> {
    need(p.nu >= 0.0 && p.nu * p.m <= 1.0 + EPS, "nu in [0, 1/m]")
}

fn nu_half_open(p: &LambParams) -> Result<()> {
    need(p.nu >= 0.0 && p.nu * p.m < 1.0 - EPS, "nu in [0, 1/m)")
}

fn lambda_upper(p: &LambParams) -> Result<()> {
    need(p.lambda >= 0.0 && p.lambda < p.sigma(), "lambda in [0, (1 + nu m)/2)")
}

fn lambda_nonpositive(p: &LambParams) -> Result<()> {
    need(p.lambda <= 0.0, "lambda <= 0")
}

fn m_positive(p: &LambParams) -> Result<()> {
    need(p.m > 0.0, "m > 0")
}

fn m_above_one(p: &LambParams) -> Result<()> {
    need(p.m > 1.0, "m > 1")
}

fn exponent_p(ex: &Exponents) -> Result<f64> {
    let p = ex.p.ok_or_else(|| Error::InvalidInput("statement needs the exponent p".into()))?;
    need(p.is_finite() && p >= 1.0, "p >= 1")?;
    Ok(p)
}

/// Checks the validity predicate of `id` and normalizes the parameters.
pub fn resolve(id: StatementId, params: &LambParams, ex: &Exponents) -> Result<Resolved> {
    use StatementId::*;
    if !(params.nu.is_finite() && params.m.is_finite() && params.lambda.is_finite()) {
        return Err(Error::InvalidParams("non-finite parameters".into()));
    }
    let mut out = Resolved { params: *params, p: None, r: None, boundary: false };
    match id {
        L3A | T1A | T4A => {
            m_positive(params)?;
            nu_open_left(params)?;
            lambda_upper(params)?;
        }
        L3B | T1B | T4B => {
            m_positive(params)?;
            nu_open_left(params)?;
            lambda_nonpositive(params)?;
        }
        COR2 | AW1 => {
            m_positive(params)?;
            nu_open_left(params)?;
            out.params.lambda = 0.0;
        }
        COR3 | T5 => {
            m_above_one(params)?;
            nu_open_left(params)?;
            lambda_upper(params)?;
        }
        M1SHARP => m_above_one(params)?,
        OPIAL6 | OPIAL7 => {}
        EX1S | EX2S | EX3S => out.params = id.canonical_params().unwrap_or(*params),
        T2A | T2B => {
            let p = exponent_p(ex)?;
            let r = ex.r.unwrap_or(p);
            need(r.is_finite() && r >= 1.0 && r <= p, "r in [1, p]")?;
            m_above_one(params)?;
            if id == T2A {
                nu_closed(params)?;
            } else {
                nu_half_open(params)?;
            }
            lambda_upper(params)?;
            out.p = Some(p);
            out.r = Some(r);
        }
        T6A | T6B => {
            let p = exponent_p(ex)?;
            m_above_one(params)?;
            if id == T6A {
                nu_closed(params)?;
            } else {
                nu_half_open(params)?;
            }
            lambda_upper(params)?;
            out.p = Some(p);
            out.r = Some(p);
        }
        COR4A => {
            let p = exponent_p(ex)?;
            m_above_one(params)?;
            nu_closed(params)?;
            lambda_upper(params)?;
            let s = 2.0 * (1.0 + params.nu * params.m) - 4.0 * params.lambda * params.lambda;
            need(s <= 1.0 + EPS, "2(1 + nu m) - 4 lambda^2 <= 1")?;
            out.p = Some(p);
            out.r = Some(p);
        }
        COR4B => {
            let p = exponent_p(ex)?;
            m_above_one(params)?;
            nu_closed(params)?;
            out.params.lambda = params.sigma();
            out.p = Some(p);
            out.r = Some(p);
        }
        T3A | T7A => {
            m_above_one(params)?;
            nu_closed(params)?;
            lambda_upper(params)?;
        }
        T3B | T7B => {
            // one printed version has nu < 1/m, the other nu <= 1/m
            m_positive(params)?;
            nu_closed(params)?;
            lambda_nonpositive(params)?;
            out.boundary = (params.nu * params.m - 1.0).abs() <= EPS;
        }
        COR5 => {
            m_above_one(params)?;
            nu_closed(params)?;
            lambda_upper(params)?;
        }
    }
    Ok(out)
}

/// Whether the statement's coefficients involve the Lamb constant.
pub fn needs_lamb_constant(id: StatementId) -> bool {
    use StatementId::*;
    !matches!(id, M1SHARP | OPIAL6 | OPIAL7 | EX2S | EX3S | COR4B)
}

/// Term layout of `id` at resolved parameters with Lamb constant `c`.
pub fn layout(id: StatementId, res: &Resolved, c: f64) -> Vec<TermSpec> {
    use Side::{Lhs, Rhs};
    use StatementId::*;
    let LambParams { nu, m, lambda } = res.params;
    let nm = nu * m;
    let sigma = res.params.sigma();
    let h = res.params.hardy_coeff();
    let lam2 = lambda * lambda;
    let k_rem = c * c + (m - 1.0) * (lambda - lam2);
    let p = res.p.unwrap_or(1.0);
    let r = res.r.unwrap_or(p);
    let t = TermSpec::new;
    match id {
        L3A | T1A | T4A => vec![
            t(Lhs, "(1-nu^2 m^2)/4", h, 0.0, 1.0, 0.0, 2.0),
            t(Lhs, "c^2", c * c, m, 1.0, 0.0, 2.0 - m),
            t(Rhs, "(1+nu m)/2 - lambda^2", sigma - lam2, 0.0, 0.0, 1.0, 1.0),
            t(Rhs, "lambda^2 - lambda", lam2 - lambda, 1.0, 0.0, 1.0, 0.0),
        ],
        L3B | T1B | T4B => vec![
            t(Lhs, "(1-nu^2 m^2)/4", h, 0.0, 1.0, 0.0, 2.0),
            t(Lhs, "c^2", c * c, m, 1.0, 0.0, 2.0 - m),
            t(Rhs, "(1+nu m)/2", sigma, 0.0, 0.0, 1.0, 1.0),
            t(Rhs, "-lambda", -lambda, 1.0, 0.0, 1.0, 0.0),
        ],
        COR2 => vec![
            t(Lhs, "(1-nu^2 m^2)/4", h, 0.0, 1.0, 0.0, 2.0),
            t(Lhs, "C^2", c * c, m, 1.0, 0.0, 2.0 - m),
            t(Rhs, "(1+nu m)/2", sigma, 0.0, 0.0, 1.0, 1.0),
        ],
        COR3 | T5 => vec![
            t(Lhs, "(1-nu^2 m^2)/4", h, 0.0, 1.0, 0.0, 2.0),
            t(Lhs, "c^2 + (m-1)(lambda - lambda^2)", k_rem, m, 1.0, 0.0, 2.0 - m),
            t(Rhs, "(1+nu m)/2 - lambda^2", sigma - lam2, 0.0, 0.0, 1.0, 1.0),
        ],
        M1SHARP => vec![
            t(Lhs, "m-1", m - 1.0, m - 1.0, 1.0, 0.0, 2.0 - m),
            t(Rhs, "1", 1.0, 0.0, 0.0, 1.0, 0.0),
        ],
        OPIAL6 => vec![
            t(Lhs, "1", 1.0, 0.0, 1.0, 1.0, 1.0),
            t(Rhs, "2", 2.0, 0.0, 0.0, 2.0, 0.0),
        ],
        OPIAL7 => vec![
            t(Lhs, "1", 1.0, 0.0, 1.0, 1.0, 0.0),
            t(Rhs, "rho/2", 0.5, -1.0, 0.0, 2.0, 0.0),
        ],
        EX1S => vec![
            t(Lhs, "4c^2/3", 4.0 * c * c / 3.0, 1.0, 1.0, 0.0, 1.0),
            t(Rhs, "1", 1.0, 0.0, 0.0, 1.0, 1.0),
            t(Rhs, "-1/3", -1.0 / 3.0, 1.0, 0.0, 1.0, 0.0),
        ],
        EX2S => vec![
            t(Lhs, "1", 1.0, 1.0, 1.0, 0.0, 1.0),
            t(Rhs, "1", 1.0, 0.0, 0.0, 1.0, 1.0),
            t(Rhs, "-1/2", -0.5, 1.0, 0.0, 1.0, 0.0),
        ],
        EX3S => vec![
            t(Lhs, "1", 1.0, 0.0, 1.0, 0.0, 2.0),
            t(Rhs, "1", 1.0, 0.0, 0.0, 1.0, 1.0),
            t(Rhs, "-1", -1.0, 1.0, 0.0, 1.0, 0.0),
        ],
        T2A | T6A => vec![
            t(Lhs, "1 - r nu^2 m^2", 1.0 - r * nm * nm, 0.0, p, 0.0, 2.0),
            t(Lhs, "4r(c^2 + (m-1)(lambda - lambda^2))", 4.0 * r * k_rem, m, p, 0.0, 2.0 - m),
            t(
                Rhs,
                "p^r (2(1+nu m) - 4 lambda^2)^r",
                p.powf(r) * (2.0 * (1.0 + nm) - 4.0 * lam2).powf(r),
                0.0,
                p - r,
                r,
                2.0 - r,
            ),
        ],
        T2B | T6B => {
            let q = 1.0 - nm * nm;
            vec![
                t(Lhs, "1", 1.0, 0.0, p, 0.0, 2.0),
                t(
                    Lhs,
                    "4r(c^2 + (m-1)(lambda - lambda^2))/(1 - nu^2 m^2)",
                    4.0 * r * k_rem / q,
                    m,
                    p,
                    0.0,
                    2.0 - m,
                ),
                t(
                    Rhs,
                    "p^r (2/(1-nu m) - 4 lambda^2/(1-nu^2 m^2))^r",
                    p.powf(r) * (2.0 / (1.0 - nm) - 4.0 * lam2 / q).powf(r),
                    0.0,
                    p - r,
                    r,
                    2.0 - r,
                ),
            ]
        }
        COR4A => vec![
            t(Lhs, "4p(c^2 + (m-1)(lambda - lambda^2))", 4.0 * p * k_rem, m, p, 0.0, 2.0 - m),
            t(Rhs, "p^p", p.powf(p), 0.0, 0.0, p, 2.0 - p),
            t(Rhs, "-(1 - p nu^2 m^2)", -(1.0 - p * nm * nm), 0.0, p, 0.0, 2.0),
        ],
        COR4B => vec![
            t(Lhs, "1", 1.0, 0.0, p, 0.0, 2.0),
            t(Lhs, "p(m-1)", p * (m - 1.0), m, p, 0.0, 2.0 - m),
            t(Rhs, "p^p", p.powf(p), 0.0, 0.0, p, 2.0 - p),
        ],
        T3A | T7A => vec![
            t(Lhs, "(1-nu^2 m^2)/4", h, 0.0, 2.0, 0.0, 2.0),
            t(Lhs, "c^2 + (m-1)(lambda - lambda^2)", k_rem, m, 2.0, 0.0, 2.0 - m),
            t(Rhs, "4((1+nu m)/2 - lambda^2)", 4.0 * (sigma - lam2), 0.0, 0.0, 2.0, 0.0),
        ],
        T3B | T7B => vec![
            t(Lhs, "(1-nu^2 m^2)/4", h, 0.0, 2.0, 0.0, 2.0),
            t(Lhs, "c^2", c * c, m, 2.0, 0.0, 2.0 - m),
            t(Rhs, "2(1+nu m) + |lambda|", 2.0 * (1.0 + nm) + lambda.abs(), 0.0, 0.0, 2.0, 0.0),
        ],
        AW1 => vec![
            t(Lhs, "(1-nu^2 m^2)/4", h, 0.0, 2.0, 0.0, 2.0),
            t(Lhs, "C^2", c * c, m, 2.0, 0.0, 2.0 - m),
            t(Rhs, "1", 1.0, 0.0, 0.0, 2.0, 0.0),
        ],
        COR5 => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in StatementId::ALL {
            assert_eq!(id.name().parse::<StatementId>().unwrap(), id);
            assert_eq!(id.to_string(), id.name());
        }
        assert_eq!("special1".parse::<StatementId>().unwrap(), StatementId::T6A);
        assert_eq!("SPECIAL2".parse::<StatementId>().unwrap(), StatementId::T6B);
        assert_eq!("Special3".parse::<StatementId>().unwrap(), StatementId::T7A);
        let err = "L9".parse::<StatementId>().unwrap_err();
        assert!(err.to_string().contains("L3A"));
    }

    #[test]
    fn validity_predicates() {
        let ex = Exponents::default();
        assert!(resolve(StatementId::L3A, &LambParams::new(0.5, 1.0, 0.2), &ex).is_ok());
        let err = resolve(StatementId::L3A, &LambParams::new(0.0, 1.0, 0.2), &ex).unwrap_err();
        assert!(err.to_string().contains("nu in (0, 1/m]"));
        assert!(resolve(StatementId::L3A, &LambParams::new(0.5, 1.0, 0.75), &ex).is_err());
        assert!(resolve(StatementId::COR3, &LambParams::new(0.5, 1.0, 0.0), &ex).is_err());
        assert!(resolve(StatementId::T2A, &LambParams::new(0.2, 2.0, 0.1), &ex).is_err());
        let ex2 = Exponents::new(Some(2.0), Some(3.0));
        assert!(resolve(StatementId::T2A, &LambParams::new(0.2, 2.0, 0.1), &ex2).is_err());
        let ex3 = Exponents::new(Some(2.0), None);
        let r = resolve(StatementId::T2A, &LambParams::new(0.2, 2.0, 0.1), &ex3).unwrap();
        assert_eq!(r.r, Some(2.0));
        assert!(resolve(StatementId::T2B, &LambParams::new(0.5, 2.0, 0.1), &ex3).is_err());
        let b = resolve(StatementId::T7B, &LambParams::new(0.5, 2.0, -0.1), &ex).unwrap();
        assert!(b.boundary);
    }

    #[test]
    fn fixed_and_forced_params() {
        let ex = Exponents::new(Some(2.0), None);
        let r = resolve(StatementId::EX3S, &LambParams::new(3.0, 3.0, 3.0), &ex).unwrap();
        assert_eq!(r.params, LambParams::new(0.0, 1.0, 0.5));
        let r = resolve(StatementId::COR4B, &LambParams::new(0.25, 2.0, 0.0), &ex).unwrap();
        assert_eq!(r.params.lambda, 0.75);
        let r = resolve(StatementId::AW1, &LambParams::new(0.25, 2.0, 0.3), &ex).unwrap();
        assert_eq!(r.params.lambda, 0.0);
    }

    #[test]
    fn cor4a_condition() {
        let ex = Exponents::new(Some(2.0), None);
        // nu m = 0.5: need lambda >= sqrt(2)/2 and lambda < 0.75
        assert!(resolve(StatementId::COR4A, &LambParams::new(0.25, 2.0, 0.72), &ex).is_ok());
        assert!(resolve(StatementId::COR4A, &LambParams::new(0.25, 2.0, 0.65), &ex).is_err());
    }

    #[test]
    fn labels() {
        let res = resolve(StatementId::T2A, &LambParams::new(0.2, 2.0, 0.1), &Exponents::new(Some(3.0), Some(2.0)))
            .unwrap();
        let terms = layout(StatementId::T2A, &res, 1.0);
        assert_eq!(terms[2].integral_label(false, false), "int |f| |f'|^2");
        assert_eq!(terms[0].integral_label(true, false), "int |f|^3 / d^2");
    }
}

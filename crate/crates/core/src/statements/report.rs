use std::fmt;

use serde::{Deserialize, Serialize};

use super::registry::Side;

/// Outcome of evaluating one inequality on one subject.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    ViolatedBeyondTolerance,
    Inadmissible,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::ViolatedBeyondTolerance => "violated-beyond-tolerance",
            Verdict::Inadmissible => "inadmissible",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters as used in a report (after statement conventions applied).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub nu: f64,
    pub m: f64,
    pub lambda: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
}

/// One evaluated term `coefficient × ∫ …`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermValue {
    pub side: Side,
    pub coefficient_name: String,
    pub coefficient: f64,
    pub integrand: String,
    /// `None` when the term was skipped because its coefficient vanishes.
    pub integral: Option<f64>,
    pub error_estimate: f64,
    pub value: f64,
}

/// Both sides of an inequality evaluated on a subject.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub statement: String,
    pub params: ReportParams,
    pub subject: String,
    /// Lamb constant entering the coefficients, when the statement has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lamb_constant: Option<f64>,
    pub terms: Vec<TermValue>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    /// `rhs − lhs`.
    pub margin: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Relative floor of the violation tolerance.
pub const RELATIVE_FLOOR: f64 = 1e-9;

impl InequalityReport {
    /// Sums the terms, sets margin, tolerance and verdict.
    pub(crate) fn finish(&mut self) {
        let lhs: f64 = self.terms.iter().filter(|t| t.side == Side::Lhs).map(|t| t.value).sum();
        let rhs: f64 = self.terms.iter().filter(|t| t.side == Side::Rhs).map(|t| t.value).sum();
        let quad: f64 = self.terms.iter().map(|t| t.coefficient.abs() * t.error_estimate).sum();
        let margin = rhs - lhs;
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self.margin = Some(margin);
        self.tolerance = RELATIVE_FLOOR * lhs.abs().max(rhs.abs()).max(1.0) + quad;
        self.verdict = if margin < -self.tolerance {
            Verdict::ViolatedBeyondTolerance
        } else {
            Verdict::Holds
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

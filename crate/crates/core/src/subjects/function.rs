use serde::{Deserialize, Serialize};

use crate::bessel::{self, Order};
use crate::error::{Error, Result};
use crate::lamb::{solve_lamb, LambParams};

/// Families of test functions on the canonical interval `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// `x^α (1 − x)^β`.
    PowerBump { alpha: f64, beta: f64 },
    /// `(sin πx)^α`.
    SinePower { alpha: f64 },
    /// `√x · J_ν((2c/m) x^{m/2})`.
    BesselProfile { nu: f64, m: f64, c: f64 },
    /// `(2 min(x, 1 − x))^k`: a symmetric tent raised to the power k.
    SmoothTent { k: f64 },
    Zero,
}

/// A test function `u` on `[0, 1]` with `u(0) = 0` and an analytic
/// derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction1D {
    family: Family,
    label: String,
    bessel_scale: f64,
}

impl TestFunction1D {
    pub fn family(&self) -> Family {
        self.family
    }

    /// The spec string this function was built from.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.family, Family::Zero)
    }

    /// `u(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        match self.family {
            Family::PowerBump { alpha, beta } => x.powf(alpha) * pow0(1.0 - x, beta),
            Family::SinePower { alpha } => (std::f64::consts::PI * x).sin().max(0.0).powf(alpha),
            Family::BesselProfile { nu, m, c } => {
                let w = 2.0 * c / m * x.powf(0.5 * m);
                let (s0, _) = bessel::normalized_sums(nu, w);
                self.bessel_scale * x.powf(0.5 * (1.0 + nu * m)) * s0
            }
            Family::SmoothTent { k } => (2.0 * x.min(1.0 - x)).max(0.0).powf(k),
            Family::Zero => 0.0,
        }
    }

    /// `u'(x)`.
    pub fn deriv(&self, x: f64) -> f64 {
        match self.family {
            Family::PowerBump { alpha, beta } => {
                let y = 1.0 - x;
                let mut d = alpha * pow0(x, alpha - 1.0) * pow0(y, beta);
                if beta != 0.0 {
                    d -= beta * x.powf(alpha) * pow0(y, beta - 1.0);
                }
                d
            }
            Family::SinePower { alpha } => {
                let t = std::f64::consts::PI * x;
                alpha * std::f64::consts::PI * pow0(t.sin().max(0.0), alpha - 1.0) * t.cos()
            }
            Family::BesselProfile { nu, m, c } => {
                let w = 2.0 * c / m * x.powf(0.5 * m);
                let (s0, s1) = bessel::normalized_sums(nu, w);
                self.bessel_scale * pow0(x, 0.5 * (nu * m - 1.0)) * (0.5 * s0 + 0.5 * m * s1)
            }
            Family::SmoothTent { k } => {
                if x < 0.5 {
                    2.0 * k * pow0(2.0 * x, k - 1.0)
                } else if x > 0.5 {
                    -2.0 * k * pow0(2.0 * (1.0 - x), k - 1.0)
                } else {
                    0.0
                }
            }
            Family::Zero => 0.0,
        }
    }

    /// `u(1 − s)`, accurate for small `s`.
    pub fn eval_rev(&self, s: f64) -> f64 {
        match self.family {
            Family::PowerBump { alpha, beta } => pow0(1.0 - s, alpha) * pow0(s, beta),
            Family::SinePower { alpha } => (std::f64::consts::PI * s).sin().max(0.0).powf(alpha),
            Family::SmoothTent { k } => (2.0 * s.min(1.0 - s)).max(0.0).powf(k),
            _ => self.eval(1.0 - s),
        }
    }

    /// `u'(1 − s)`, accurate for small `s`.
    pub fn deriv_rev(&self, s: f64) -> f64 {
        match self.family {
            Family::PowerBump { alpha, beta } => {
                let x = 1.0 - s;
                let mut d = alpha * pow0(x, alpha - 1.0) * pow0(s, beta);
                if beta != 0.0 {
                    d -= beta * pow0(x, alpha) * pow0(s, beta - 1.0);
                }
                d
            }
            Family::SinePower { alpha } => {
                let t = std::f64::consts::PI * s;
                -alpha * std::f64::consts::PI * pow0(t.sin().max(0.0), alpha - 1.0) * t.cos()
            }
            Family::SmoothTent { .. } => -self.deriv(s),
            _ => self.deriv(1.0 - s),
        }
    }

    /// Exponent `d` with `u(x) ~ x^d` as `x → 0`.
    pub fn decay_left(&self) -> f64 {
        match self.family {
            Family::PowerBump { alpha, .. } => alpha,
            Family::SinePower { alpha } => alpha,
            Family::BesselProfile { nu, m, .. } => 0.5 * (1.0 + nu * m),
            Family::SmoothTent { k } => k,
            Family::Zero => f64::INFINITY,
        }
    }

    /// Exponent with `u(x) ~ (1 − x)^d` as `x → 1`, or `None` when `u` is
    /// smooth and nonzero there.
    pub fn decay_right(&self) -> Option<f64> {
        match self.family {
            Family::PowerBump { beta, .. } => (beta > 0.0).then_some(beta),
            Family::SinePower { alpha } => Some(alpha),
            Family::BesselProfile { .. } => None,
            Family::SmoothTent { k } => Some(k),
            Family::Zero => Some(f64::INFINITY),
        }
    }

    /// Interior points where `|u'|` vanishes or has a kink; used as
    /// quadrature breakpoints.
    pub fn critical_points(&self) -> Vec<f64> {
        match self.family {
            Family::PowerBump { alpha, beta } if beta > 0.0 => vec![alpha / (alpha + beta)],
            Family::SinePower { .. } | Family::SmoothTent { .. } => vec![0.5],
            _ => Vec::new(),
        }
    }
}

// x^e with 0^0 = 1 and 0^e = 0 for e > 0.
fn pow0(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        x.max(0.0).powf(e)
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be positive, got {v}")))
    }
}

/// Builds a test function, validating the family parameters.
pub fn make_test_function(family: Family) -> Result<TestFunction1D> {
    let label = match family {
        Family::PowerBump { alpha, beta } => {
            positive("alpha", alpha)?;
            if !(beta.is_finite() && beta >= 0.0) {
                return Err(Error::InvalidInput(format!("beta must be nonnegative, got {beta}")));
            }
            format!("powerbump:{alpha},{beta}")
        }
        Family::SinePower { alpha } => {
            positive("alpha", alpha)?;
            format!("sinepower:{alpha}")
        }
        Family::SmoothTent { k } => {
            positive("k", k)?;
            format!("smoothtent:{k}")
        }
        Family::BesselProfile { nu, m, c } => {
            return bessel_profile_with_label(nu, m, c, format!("besselprofile:{nu},{m},c={c}"));
        }
        Family::Zero => "zero".to_string(),
    };
    Ok(TestFunction1D { family, label, bessel_scale: 0.0 })
}

fn bessel_profile_with_label(nu: f64, m: f64, c: f64, label: String) -> Result<TestFunction1D> {
    positive("m", m)?;
    let order = Order::new(nu).map_err(|_| Error::InvalidInput(format!("nu must be >= 0, got {nu}")))?;
    if nu < 0.0 {
        return Err(Error::InvalidInput(format!("nu must be >= 0, got {nu}")));
    }
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::InvalidInput(format!("c must be nonnegative, got {c}")));
    }
    let j_nu = bessel::first_zero(order).map_err(|e| Error::InvalidInput(e.to_string()))?.value;
    if 2.0 * c / m >= j_nu {
        return Err(Error::InvalidInput(format!(
            "2c/m = {} must be below the first zero {j_nu} so the profile stays positive",
            2.0 * c / m
        )));
    }
    // (z0/2)^ν / Γ(ν+1) with z0 = 2c/m; for c = 0 the profile degenerates to x^{(1+νm)/2}/Γ(ν+1)
    let half = c / m;
    let scale = if half == 0.0 {
        if nu == 0.0 {
            1.0
        } else {
            1.0 / bessel::gamma_real(nu + 1.0)?
        }
    } else {
        half.powf(nu) / bessel::gamma_real(nu + 1.0)?
    };
    Ok(TestFunction1D { family: Family::BesselProfile { nu, m, c }, label, bessel_scale: scale })
}

/// Bessel profile whose constant solves the parametric Lamb equation at
/// `(ν, m, λ)`.
pub fn bessel_profile(nu: f64, m: f64, lambda: f64) -> Result<TestFunction1D> {
    let root = solve_lamb(&LambParams::new(nu, m, lambda))?;
    bessel_profile_with_label(nu, m, root.c, format!("besselprofile:{nu},{m},{lambda}"))
}

//! Parametric Lamb constants.
//!
//! For parameters `(ν, m, λ)` the Lamb constant `c = c_ν(m, λ)` is defined
//! through its scaled root `z = 2c/m`, the first zero on `(0, j_ν)` of
//!
//! ```text
//! F(z) = (1 − 2λ)·J_ν(z) + m·z·J'_ν(z).
//! ```
//!
//! (Substituting `z = 2c/m` into `(1 − 2λ)J_ν(2c/m) + 2c·J'_ν(2c/m)` turns
//! `2c` into `m·z`.) Near the origin `F(z) ≈ (z/2)^ν/Γ(ν+1)·(1 − 2λ + mν)`,
//! and at `j_ν` it equals `m·j_ν·J'_ν(j_ν) < 0`, so a root exists whenever
//! `λ < (1 + νm)/2`. At `λ = (1 + νm)/2` the root collapses to zero.

mod closed_form;
pub(crate) mod constants;
mod continuation;

pub use closed_form::{closed_form_lamb, half_order_trig_root};
pub use constants::{statement_constants, ConstantSet, NamedCoeff};
pub use continuation::{lamb_ode_continuation, lamb_ode_rhs, p_from_lambda, solve_lamb_ode, ODE_TOL};

use serde::{Deserialize, Serialize};

use crate::bessel::{self, Order, MAX_ZERO_ORDER};
use crate::error::{Error, Result};
use crate::roots;

/// Parameter triple `(ν, m, λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambParams {
    pub nu: f64,
    pub m: f64,
    pub lambda: f64,
}

impl LambParams {
    pub fn new(nu: f64, m: f64, lambda: f64) -> Self {
        LambParams { nu, m, lambda }
    }

    /// `(1 + νm)/2`, the supremum of `x y'/y` for the Bessel profile and the
    /// upper end of the admissible λ range.
    pub fn sigma(&self) -> f64 {
        0.5 * (1.0 + self.nu * self.m)
    }

    /// `(1 − ν²m²)/4`.
    pub fn hardy_coeff(&self) -> f64 {
        let nm = self.nu * self.m;
        0.25 * (1.0 - nm * nm)
    }

    /// `1 − 2λ + mν`, the sign of the residual at the origin.
    pub fn origin_slope(&self) -> f64 {
        1.0 - 2.0 * self.lambda + self.m * self.nu
    }

    /// True when `ν ≤ 1/m`, i.e. the Hardy coefficient is nonnegative.
    pub fn remainder_regime(&self) -> bool {
        self.nu * self.m <= 1.0 + 1e-12
    }

    fn check_basic(&self) -> Result<()> {
        if !(self.nu.is_finite() && self.m.is_finite() && self.lambda.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite parameters {self:?}")));
        }
        if !(self.m > 0.0) {
            return Err(Error::InvalidParams(format!("m must be positive, got {}", self.m)));
        }
        if !(0.0..=MAX_ZERO_ORDER).contains(&self.nu) {
            return Err(Error::InvalidParams(format!(
                "nu must lie in [0, {MAX_ZERO_ORDER}], got {}",
                self.nu
            )));
        }
        Ok(())
    }
}

/// How a root was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambMethod {
    BisectNewton,
    OdeContinuation,
    ClosedForm,
}

impl std::fmt::Display for LambMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LambMethod::BisectNewton => "bisect-newton",
            LambMethod::OdeContinuation => "ode-continuation",
            LambMethod::ClosedForm => "closed-form",
        })
    }
}

/// A solved Lamb constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambRoot {
    /// The Lamb constant `c = m z / 2`.
    pub c: f64,
    /// Scaled root `z = 2c/m ∈ (0, j_ν)`.
    pub z: f64,
    /// `F(z)` at the returned root.
    pub residual: f64,
    pub bracket: (f64, f64),
    pub method: LambMethod,
    /// Set when `λ = (1 + νm)/2` and the constant is the limit value 0.
    pub limiting: bool,
}

/// `F(z) = (1 − 2λ)J_ν(z) + m z J'_ν(z)`.
pub fn lamb_residual(params: &LambParams, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("lamb_residual needs z > 0, got {z}")));
    }
    if z > bessel::MAX_ARGUMENT {
        return Err(Error::Domain(format!("z = {z} exceeds the supported range")));
    }
    let nu = Order::new(params.nu)?.nu();
    let (j, zdj) = bessel::j_and_zdj(nu, z);
    Ok((1.0 - 2.0 * params.lambda) * j + params.m * zdj)
}

/// `F(z)` divided by `(z/2)^ν/Γ(ν+1)`: same zeros on `z > 0`, analytic at
/// the origin with value `1 − 2λ + mν`.
fn normalized_residual(params: &LambParams, z: f64) -> f64 {
    let (s0, s1) = bessel::normalized_sums(params.nu, z);
    (1.0 - 2.0 * params.lambda) * s0 + params.m * s1
}

fn normalized_residual_with_slope(params: &LambParams, z: f64) -> (f64, f64) {
    let h = 1e-6 * z.max(1e-3);
    let f = normalized_residual(params, z);
    let d = (normalized_residual(params, z + h) - normalized_residual(params, z - h)) / (2.0 * h);
    (f, d)
}

/// Relative width of the forward scan used to isolate the first root.
pub const LAMB_SCAN_FRACTION: f64 = 0.01;

/// Solves the parametric Lamb equation for its first root by forward scan,
/// bisection and Newton polish.
pub fn solve_lamb(params: &LambParams) -> Result<LambRoot> {
    params.check_basic()?;
    let sigma = params.sigma();
    let gap = sigma - params.lambda;
    if gap.abs() <= 1e-14 * sigma.max(1.0) {
        return Ok(LambRoot {
            c: 0.0,
            z: 0.0,
            residual: 0.0,
            bracket: (0.0, 0.0),
            method: LambMethod::ClosedForm,
            limiting: true,
        });
    }
    if params.origin_slope() <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "lambda = {} must be below (1 + nu m)/2 = {sigma}",
            params.lambda
        )));
    }
    let j_nu = bessel::first_zero(Order::new(params.nu)?)?.value;
    let g = |z: f64| normalized_residual(params, z);
    let gd = |z: f64| normalized_residual_with_slope(params, z);
    let step = LAMB_SCAN_FRACTION * j_nu;
    // G(0) = (1 − 2λ + mν)/… > 0, so the scan may start at the origin itself
    let (z, bracket, _) = roots::first_root(g, gd, 0.0, step, j_nu).ok_or_else(|| {
        Error::Internal(format!("no sign change of the Lamb residual on (0, j_nu) for {params:?}"))
    })?;
    if !(z > 0.0 && z < j_nu) {
        return Err(Error::Internal(format!("root {z} outside (0, {j_nu})")));
    }
    Ok(LambRoot {
        c: 0.5 * params.m * z,
        z,
        residual: lamb_residual(params, z)?,
        bracket,
        method: LambMethod::BisectNewton,
        limiting: false,
    })
}

/// Solver selection for [`solve_lamb_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolveMethod {
    /// Closed form when one applies, else bisection.
    #[default]
    Auto,
    Bisect,
    /// ODE continuation from the `λ = 0` root.
    Ode,
    /// Closed form only; parameters without one are rejected.
    Closed,
}

impl std::str::FromStr for SolveMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "auto" => Ok(SolveMethod::Auto),
            "bisect" => Ok(SolveMethod::Bisect),
            "ode" => Ok(SolveMethod::Ode),
            "closed" => Ok(SolveMethod::Closed),
            _ => Err(Error::InvalidInput(format!("unknown method '{s}'; valid: auto, bisect, ode, closed"))),
        }
    }
}

/// Solves the Lamb equation with the chosen method.
pub fn solve_lamb_with(params: &LambParams, method: SolveMethod) -> Result<LambRoot> {
    match method {
        SolveMethod::Bisect => solve_lamb(params),
        SolveMethod::Ode => solve_lamb_ode(params),
        SolveMethod::Auto | SolveMethod::Closed => {
            params.check_basic()?;
            if let Some(root) = closed_form_lamb(params) {
                return Ok(root);
            }
            if method == SolveMethod::Closed {
                return Err(Error::InvalidInput(format!(
                    "no closed form applies to {params:?}; closed forms cover lambda = (1 - m nu)/2, lambda = 1/2, nu = 1/2"
                )));
            }
            solve_lamb(params)
        }
    }
}

/// The classical Lamb constant `C_ν(m)`, i.e. the parametric one at `λ = 0`.
pub fn classical_lamb(nu: f64, m: f64) -> Result<LambRoot> {
    solve_lamb(&LambParams::new(nu, m, 0.0))
}

/// Largest `|F|` seen on a uniform grid over the bracket `(0, j_ν)`; the
/// scale for residual checks.
pub fn residual_scale(params: &LambParams) -> Result<f64> {
    let j_nu = bessel::first_zero(Order::new(params.nu)?)?.value;
    let n = 200;
    let mut scale: f64 = 0.0;
    for i in 1..=n {
        let z = j_nu * i as f64 / n as f64;
        scale = scale.max(lamb_residual(params, z)?.abs());
    }
    Ok(scale)
}

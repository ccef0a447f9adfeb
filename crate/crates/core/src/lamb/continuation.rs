//! Continuation of the Lamb root in the parameter `p`.
//!
//! Dividing `F(z) = 0` by `m/2` gives `p·J_ν(z) + 2z·J'_ν(z) = 0` with
//! `p = 2(1 − 2λ)/m`. Differentiating implicitly and eliminating `J''_ν`
//! with Bessel's equation yields
//!
//! ```text
//! dz/dp = 2z / (p² − 4ν² + 4z²).
//! ```

use super::{lamb_residual, solve_lamb, LambMethod, LambParams, LambRoot};
use crate::bessel::{self, Order};
use crate::error::{Error, Result};

/// Local error target per accepted step.
pub const ODE_TOL: f64 = 1e-12;

/// `p = 2(1 − 2λ)/m`.
pub fn p_from_lambda(m: f64, lambda: f64) -> f64 {
    2.0 * (1.0 - 2.0 * lambda) / m
}

fn denominator(nu: f64, p: f64, z: f64) -> f64 {
    p * p - 4.0 * nu * nu + 4.0 * z * z
}

/// Right-hand side `2z/(p² − 4ν² + 4z²)`.
pub fn lamb_ode_rhs(nu: f64, p: f64, z: f64) -> f64 {
    2.0 * z / denominator(nu, p, z)
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates the continuation ODE from `(p_start, z_start)` to `p_end` and
/// returns `z(p_end)`.
///
/// Unless the path has zero length, the starting point must satisfy
/// `p·J_ν(z) + 2z·J'_ν(z) = 0` to within `1e-9`. Leaving `(0, j_ν)` is a
/// [`Error::ContinuationFailure`]; a sign change of the denominator along
/// the path is an [`Error::SingularPath`].
pub fn lamb_ode_continuation(nu: f64, p_start: f64, z_start: f64, p_end: f64) -> Result<f64> {
    let order = Order::new(nu)?;
    if !(p_start.is_finite() && p_end.is_finite() && z_start.is_finite()) {
        return Err(Error::InvalidInput("non-finite continuation endpoints".into()));
    }
    let j_nu = bessel::first_zero(order)?.value;
    if !(z_start > 0.0 && z_start < j_nu) {
        return Err(Error::ContinuationFailure(format!(
            "start z = {z_start} not in (0, {j_nu})"
        )));
    }
    // a zero-length path is the identity, whatever the start point
    if p_start == p_end {
        return Ok(z_start);
    }
    let (j, zdj) = bessel::j_and_zdj(nu, z_start);
    let start_residual = p_start * j + 2.0 * zdj;
    if start_residual.abs() > 1e-9 {
        return Err(Error::InvalidInput(format!(
            "start point is not on the root curve (residual {start_residual:e})"
        )));
    }

    let span = p_end - p_start;
    let dir = span.signum();
    let start_sign = denominator(nu, p_start, z_start).signum();
    let f = |p: f64, z: f64| -> Result<f64> {
        let d = denominator(nu, p, z);
        if d.signum() != start_sign || d == 0.0 {
            return Err(Error::SingularPath(format!(
                "denominator p^2 - 4nu^2 + 4z^2 changes sign near p = {p}"
            )));
        }
        Ok(2.0 * z / d)
    };

    let mut p = p_start;
    let mut z = z_start;
    let mut h = dir * (span.abs() / 100.0).min(0.05);
    let mut k = [0.0; 7];
    let mut steps = 0usize;
    while (p_end - p) * dir > 0.0 {
        steps += 1;
        if steps > 200_000 {
            return Err(Error::ContinuationFailure("step budget exhausted".into()));
        }
        if (p + h - p_end) * dir > 0.0 {
            h = p_end - p;
        }
        k[0] = f(p, z)?;
        for i in 1..7 {
            let zi = z + h * (0..i).map(|j| A[i][j] * k[j]).sum::<f64>();
            if !(zi > 0.0) {
                return Err(Error::ContinuationFailure(format!("z left (0, j_nu) near p = {p}")));
            }
            k[i] = f(p + C[i] * h, zi)?;
        }
        let z5 = z + h * (0..7).map(|j| B5[j] * k[j]).sum::<f64>();
        let z4 = z + h * (0..7).map(|j| B4[j] * k[j]).sum::<f64>();
        let err = (z5 - z4).abs();
        let scale = ODE_TOL * (1.0 + z5.abs());
        if err <= scale {
            p = if (p + h - p_end) * dir >= 0.0 { p_end } else { p + h };
            z = z5;
            if !(z > 0.0 && z < j_nu) {
                return Err(Error::ContinuationFailure(format!(
                    "z = {z} left (0, {j_nu}) at p = {p}"
                )));
            }
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * (scale / err).powf(0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h.abs() < 1e-14 * (1.0 + p.abs()) {
            return Err(Error::ContinuationFailure(format!("step size underflow at p = {p}")));
        }
    }
    Ok(z)
}

/// Solves for `c_ν(m, λ)` by continuation from the bisected root at `λ = 0`.
pub fn solve_lamb_ode(params: &LambParams) -> Result<LambRoot> {
    let anchor_params = LambParams::new(params.nu, params.m, 0.0);
    let anchor = solve_lamb(&anchor_params)?;
    let target = solve_target_check(params)?;
    if let Some(r) = target {
        return Ok(r);
    }
    let p0 = p_from_lambda(params.m, 0.0);
    let p1 = p_from_lambda(params.m, params.lambda);
    let z = lamb_ode_continuation(params.nu, p0, anchor.z, p1)?;
    Ok(LambRoot {
        c: 0.5 * params.m * z,
        z,
        residual: lamb_residual(params, z)?,
        bracket: (anchor.z.min(z), anchor.z.max(z)),
        method: LambMethod::OdeContinuation,
        limiting: false,
    })
}

// Handles the limiting λ = σ case and rejects λ > σ before integrating.
fn solve_target_check(params: &LambParams) -> Result<Option<LambRoot>> {
    let sigma = params.sigma();
    if (sigma - params.lambda).abs() <= 1e-14 * sigma.max(1.0) {
        return solve_lamb(params).map(Some);
    }
    if params.origin_slope() <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "lambda = {} must be below (1 + nu m)/2 = {sigma}",
            params.lambda
        )));
    }
    Ok(None)
}

use std::f64::consts::PI;

use super::{lamb_residual, LambMethod, LambParams, LambRoot};
use crate::bessel::{self, Order};
use crate::roots;

/// Closed-form Lamb constants, when one applies:
///
/// * `λ = (1 − mν)/2`, `ν > 0`: the equation reduces to `z J_{ν−1}(z) = 0`,
///   so `c = (m/2) j_{ν−1}`;
/// * `λ = 1/2`: the `J_ν` coefficient vanishes and `c = (m/2) j'_ν`;
/// * `ν = 1/2`: `2mz cos z − (4λ + m − 2) sin z = 0` on `(0, π)`, solved by
///   bisection.
///
/// Returns `None` when no case matches or the parameters are outside the
/// solver's range.
pub fn closed_form_lamb(params: &LambParams) -> Option<LambRoot> {
    let LambParams { nu, m, lambda } = *params;
    if !(m > 0.0) || !(0.0..=bessel::MAX_ZERO_ORDER).contains(&nu) || params.origin_slope() <= 0.0 {
        return None;
    }
    let tol = 1e-14;
    let z = if nu > 0.0 && (lambda - 0.5 * (1.0 - m * nu)).abs() <= tol {
        bessel::first_zero(Order::new(nu - 1.0).ok()?).ok()?.value
    } else if nu > 0.0 && (lambda - 0.5).abs() <= tol {
        bessel::first_zero_of_derivative(Order::new(nu).ok()?).ok()?.value
    } else if (nu - 0.5).abs() <= tol {
        half_order_trig_root(m, lambda)?
    } else {
        return None;
    };
    Some(LambRoot {
        c: 0.5 * m * z,
        z,
        residual: lamb_residual(params, z).ok()?,
        bracket: (0.0, z),
        method: LambMethod::ClosedForm,
        limiting: false,
    })
}

/// First root on `(0, π)` of `2mz cos z − (4λ + m − 2) sin z`, the ν = 1/2
/// Lamb equation after multiplying through by `√z`.
pub fn half_order_trig_root(m: f64, lambda: f64) -> Option<f64> {
    let k = 4.0 * lambda + m - 2.0;
    // divided by z so the function is positive at the origin: 2m cos z − k sin z / z
    let g = |z: f64| {
        let sinc = if z == 0.0 { 1.0 } else { z.sin() / z };
        2.0 * m * z.cos() - k * sinc
    };
    let (a, b) = roots::scan_for_sign_change(g, 0.0, PI / 200.0, PI)?;
    if a == b {
        return (a > 0.0).then_some(a);
    }
    let (lo, hi, _) = roots::bisect(g, a, b, 0.0);
    Some(if g(lo).abs() <= g(hi).abs() { lo } else { hi })
}

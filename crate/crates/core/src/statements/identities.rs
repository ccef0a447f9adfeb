//! Residual checks of the Bessel identities, the profile ODE, the monotone
//! log-derivative profile, and the constant comparison.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bessel::{self, Order};
use crate::error::{Error, Result};
use crate::lamb::{classical_lamb, solve_lamb, LambParams};
use crate::subjects::{make_test_function, Family};

/// Which identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `1 − ((J_{ν−1} − J_{ν+1})/(J_{ν−1} + J_{ν+1}))² − z²/ν²
    ///  = (z²/ν²)(−1 + J_{ν+1}J_{ν−1}/J_ν²)`.
    Lemma1,
    /// `y'' + ((1 − ν²m²)/(4x²) + c²/x^{2−m}) y = 0` for the Bessel profile.
    Ode5,
    /// `(z²/4)(J²_{ν−1} − J_{ν−2}J_ν) = Σ (ν + 2n) J²_{ν+2n}`.
    Sqsum,
    /// `J_{ν−1} + J_{ν+1} = (2ν/z) J_ν`.
    Recurrence,
    /// `J'_ν = (J_{ν−1} − J_{ν+1})/2` against the termwise derivative series.
    HalfDiff,
}

impl Identity {
    pub const ALL: [Identity; 5] =
        [Identity::Lemma1, Identity::Ode5, Identity::Sqsum, Identity::Recurrence, Identity::HalfDiff];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::Lemma1 => "lemma1",
            Identity::Ode5 => "ode5",
            Identity::Sqsum => "sqsum",
            Identity::Recurrence => "recurrence",
            Identity::HalfDiff => "halfdiff",
        }
    }

    /// Acceptance threshold on the reported residual.
    pub fn threshold(&self) -> f64 {
        match self {
            Identity::Ode5 => 1e-6,
            _ => 1e-10,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let k = s.trim().to_ascii_lowercase().replace(['-', '_'], "");
        Identity::ALL.iter().copied().find(|i| i.name() == k).ok_or_else(|| {
            Error::InvalidInput(format!(
                "unknown identity '{s}'; valid: all, lemma1, ode5, sqsum, recurrence, halfdiff"
            ))
        })
    }
}

/// Points at which an identity is checked.
#[derive(Debug, Clone, PartialEq)]
pub enum IdentityInputs {
    /// `(ν, z)` pairs.
    Points(Vec<(f64, f64)>),
    /// Bessel profiles `(ν, m, c)` checked on an `x` grid with difference step `h`.
    Profiles { profiles: Vec<(f64, f64, f64)>, xs: Vec<f64>, h: f64 },
    /// The built-in grid for the identity.
    Default,
}

/// Largest residual of an identity over its inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub points: usize,
    /// Absolute residual, except for `ode5` where it is relative to `|Q y|`.
    pub max_residual: f64,
    pub relative: bool,
    pub worst_at: Vec<f64>,
    pub threshold: f64,
    pub passed: bool,
}

const LEMMA1_ORDERS: [f64; 9] = [0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0];

fn default_points(which: Identity) -> Result<Vec<(f64, f64)>> {
    let mut pts = Vec::new();
    match which {
        Identity::Lemma1 => {
            for &nu in &LEMMA1_ORDERS {
                let j = bessel::first_zero(Order::new(nu)?)?.value;
                for k in 1..=9 {
                    pts.push((nu, j * k as f64 / 10.0));
                }
            }
        }
        Identity::Sqsum => {
            for &mu in &[0.0, 0.5, 1.0, 2.5, 4.0] {
                for &z in &[0.1, 0.5, 1.0, 2.0, 3.0] {
                    pts.push((mu, z));
                }
            }
        }
        _ => {
            for &nu in &LEMMA1_ORDERS {
                let j = bessel::first_zero(Order::new(nu)?)?.value;
                for k in 1..=50 {
                    pts.push((nu, j * k as f64 / 50.0));
                }
            }
        }
    }
    Ok(pts)
}

/// Bessel profiles used by the default ODE check.
pub fn default_profiles() -> Result<Vec<(f64, f64, f64)>> {
    let mut out = Vec::new();
    for &(nu, m, lambda) in &[(1.0, 1.0, 0.0), (0.5, 2.0, 0.0), (0.25, 0.5, 0.3), (2.0, 0.4, -1.0), (0.0, 1.5, 0.2)] {
        out.push((nu, m, solve_lamb(&LambParams::new(nu, m, lambda))?.c));
    }
    Ok(out)
}

fn lemma1_residual(nu: f64, z: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::InvalidInput(format!("lemma1 needs nu > 0, got {nu}")));
    }
    let jm = bessel::bessel_j_ext(nu - 1.0, z)?;
    let jp = bessel::bessel_j(Order::new(nu + 1.0)?, z)?;
    let j = bessel::bessel_j(Order::new(nu)?, z)?;
    let ratio = (jm - jp) / (jm + jp);
    let zn2 = (z / nu).powi(2);
    let lhs = 1.0 - ratio * ratio - zn2;
    let rhs = zn2 * (-1.0 + jp * jm / (j * j));
    Ok(lhs - rhs)
}

fn recurrence_residual(nu: f64, z: f64) -> Result<f64> {
    let jm = bessel::bessel_j_ext(nu - 1.0, z)?;
    let jp = bessel::bessel_j(Order::new(nu + 1.0)?, z)?;
    let j = bessel::bessel_j(Order::new(nu)?, z)?;
    Ok(jm + jp - 2.0 * nu / z * j)
}

fn half_diff_residual(nu: f64, z: f64) -> Result<f64> {
    let jm = bessel::bessel_j_ext(nu - 1.0, z)?;
    let jp = bessel::bessel_j(Order::new(nu + 1.0)?, z)?;
    let (_, zdj) = bessel::j_and_zdj(nu, z);
    Ok(0.5 * (jm - jp) - zdj / z)
}

fn ode_residual(nu: f64, m: f64, c: f64, x: f64, h: f64) -> Result<(f64, f64)> {
    let y = make_test_function(Family::BesselProfile { nu, m, c })?;
    let f = |t: f64| y.eval(t);
    // fourth-order central second difference
    let d2 = (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h);
    let q = (1.0 - nu * nu * m * m) / (4.0 * x * x) + c * c * x.powf(m - 2.0);
    let qy = q * f(x);
    Ok((d2 + qy, qy))
}

/// Maximum residual of `which` over `inputs`.
pub fn verify_identity(which: Identity, inputs: &IdentityInputs) -> Result<IdentityReport> {
    let mut worst = 0.0f64;
    let mut worst_at = Vec::new();
    let mut count = 0usize;
    let mut note = |r: f64, at: Vec<f64>| {
        count += 1;
        if !(r.abs() <= worst) {
            worst = r.abs();
            worst_at = at;
        }
    };
    match which {
        Identity::Ode5 => {
            let (profiles, xs, h) = match inputs {
                IdentityInputs::Profiles { profiles, xs, h } => (profiles.clone(), xs.clone(), *h),
                IdentityInputs::Default => {
                    let xs = (0..=90).map(|i| 0.05 + 0.01 * i as f64).filter(|x| *x < 0.95 + 1e-12).collect();
                    (default_profiles()?, xs, 1e-3)
                }
                IdentityInputs::Points(_) => {
                    return Err(Error::InvalidInput("ode5 takes profiles, not (nu, z) points".into()))
                }
            };
            for &(nu, m, c) in &profiles {
                for &x in &xs {
                    let (res, qy) = ode_residual(nu, m, c, x, h)?;
                    note(res / qy.abs().max(f64::MIN_POSITIVE), vec![nu, m, c, x]);
                }
            }
        }
        _ => {
            let pts = match inputs {
                IdentityInputs::Points(p) => p.clone(),
                IdentityInputs::Default => default_points(which)?,
                IdentityInputs::Profiles { .. } => {
                    return Err(Error::InvalidInput(format!("{which} takes (nu, z) points")))
                }
            };
            for &(nu, z) in &pts {
                let r = match which {
                    Identity::Lemma1 => lemma1_residual(nu, z)?,
                    Identity::Recurrence => recurrence_residual(nu, z)?,
                    Identity::HalfDiff => half_diff_residual(nu, z)?,
                    Identity::Sqsum => {
                        let (lhs, sum) = bessel::squares_sum_identity(nu, z, 40)?;
                        lhs - sum
                    }
                    Identity::Ode5 => unreachable!(),
                };
                note(r, vec![nu, z]);
            }
        }
    }
    let threshold = which.threshold();
    Ok(IdentityReport {
        identity: which,
        points: count,
        max_residual: worst,
        relative: which == Identity::Ode5,
        worst_at,
        threshold,
        passed: worst <= threshold,
    })
}

/// `x y'(x)/y(x)` for the Bessel profile on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogDerivativeProfile {
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub monotone_decreasing: bool,
    /// Extrapolated value at `x → 0`.
    pub left_limit: f64,
    /// `|left_limit − (1 + νm)/2|`.
    pub left_limit_err: f64,
    /// `|value(1) − (1/2 + c J'_ν(2c/m)/J_ν(2c/m))|`.
    pub right_value_err: f64,
    /// `|value(1) − λ|`; meaningful when `c` was solved from `λ`.
    pub lambda_err: f64,
    pub c: f64,
}

fn log_derivative(nu: f64, m: f64, c: f64, x: f64) -> f64 {
    let w = 2.0 * c / m * x.powf(0.5 * m);
    let (s0, s1) = bessel::normalized_sums(nu, w);
    0.5 + 0.5 * m * s1 / s0
}

/// Neville extrapolation to 0 of samples `(s_i, v_i)`.
fn extrapolate_to_zero(points: &[(f64, f64)]) -> f64 {
    let n = points.len();
    let mut p: Vec<f64> = points.iter().map(|q| q.1).collect();
    for k in 1..n {
        for i in 0..n - k {
            let (si, sk) = (points[i].0, points[i + k].0);
            p[i] = (sk * p[i] - si * p[i + 1]) / (sk - si);
        }
    }
    p[0]
}

/// The profile `x y'/y` of `y = √x J_ν((2c/m) x^{m/2})` on a linear grid of
/// `grid` points in `[1e-4, 1]`. When `c` is `None` it is solved from `λ`.
pub fn lemma2_profile(params: &LambParams, grid: usize, c: Option<f64>) -> Result<LogDerivativeProfile> {
    if grid < 10 {
        return Err(Error::InvalidInput(format!("grid needs at least 10 points, got {grid}")));
    }
    let LambParams { nu, m, lambda } = *params;
    let c = match c {
        Some(c) => c,
        None => solve_lamb(params)?.c,
    };
    let order = Order::new(nu)?;
    let j_nu = bessel::first_zero(order)?.value;
    if !(m > 0.0) || !(c >= 0.0) || 2.0 * c / m >= j_nu {
        return Err(Error::InvalidParams(format!(
            "profile vanishes inside (0, 1]: 2c/m = {} is not below j_nu = {j_nu}",
            2.0 * c / m
        )));
    }
    let lo = 1e-4;
    let xs: Vec<f64> = (0..grid).map(|i| lo + (1.0 - lo) * i as f64 / (grid - 1) as f64).collect();
    let values: Vec<f64> = xs.iter().map(|&x| log_derivative(nu, m, c, x)).collect();
    let monotone_decreasing = values.windows(2).all(|w| w[1] < w[0]);

    // the profile is analytic in s = x^m; extrapolate from points below the grid
    let samples: Vec<(f64, f64)> = (1..=5)
        .map(|k| {
            let x = lo * 0.5f64.powi(k);
            (x.powf(m), log_derivative(nu, m, c, x))
        })
        .collect();
    let left_limit = extrapolate_to_zero(&samples);
    let sigma = 0.5 * (1.0 + nu * m);

    let last = *values.last().expect("grid is non-empty");
    let z0 = 2.0 * c / m;
    let right_expected = if c == 0.0 {
        sigma
    } else {
        0.5 + c * bessel::bessel_j_prime(order, z0)? / bessel::bessel_j(order, z0)?
    };
    Ok(LogDerivativeProfile {
        xs,
        values,
        monotone_decreasing,
        left_limit,
        left_limit_err: (left_limit - sigma).abs(),
        right_value_err: (last - right_expected).abs(),
        lambda_err: (last - lambda).abs(),
        c,
    })
}

/// Both sides of `c² + (m − 1)(λ − λ²) ≤ C²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantComparison {
    pub params: LambParams,
    pub lhs: f64,
    pub rhs: f64,
    /// `2(1 + νm) − 4λ² ≤ 1`.
    pub condition_met: bool,
    pub holds: bool,
    /// True when the condition is not met and nothing is claimed.
    pub vacuous: bool,
}

/// Compares the enlarged remainder constant with the classical one.
pub fn corollary5_compare(params: &LambParams) -> Result<ConstantComparison> {
    let LambParams { nu, m, lambda } = *params;
    if !(m > 1.0) {
        return Err(Error::InvalidParams(format!("requires m > 1, got {m}")));
    }
    if !(nu >= 0.0 && nu * m <= 1.0 + 1e-12) {
        return Err(Error::InvalidParams("requires nu in [0, 1/m]".into()));
    }
    if !(lambda >= 0.0 && lambda < params.sigma()) {
        return Err(Error::InvalidParams("requires lambda in [0, (1 + nu m)/2)".into()));
    }
    let c = solve_lamb(params)?.c;
    let big_c = classical_lamb(nu, m)?.c;
    let lhs = c * c + (m - 1.0) * (lambda - lambda * lambda);
    let rhs = big_c * big_c;
    let condition_met = 2.0 * (1.0 + nu * m) - 4.0 * lambda * lambda <= 1.0;
    let holds = !condition_met || lhs <= rhs + 1e-12;
    Ok(ConstantComparison { params: *params, lhs, rhs, condition_met, holds, vacuous: !condition_met })
}

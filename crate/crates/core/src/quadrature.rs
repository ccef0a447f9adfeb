//! One-dimensional quadrature for weighted integrands with endpoint
//! singularities, the layer-cake reduction for distance-radial integrands,
//! and a Monte Carlo estimator used as an independent check.
//!
//! Pieces touching a flagged endpoint are integrated with the tanh-sinh
//! rule; all others with 15-point Gauss–Kronrod. The piece with the
//! largest error estimate is bisected until the summed estimate meets the
//! tolerance. The estimate is the internal discrepancy between rule levels
//! and not a rigorous bound.
//!
//! Flagged endpoints should be placed at 0 where possible: abscissae are
//! computed as `a + h·q` with `q` down to ~1e-300, which keeps full relative
//! precision only when `a = 0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subjects::ConvexDomain;

pub const DEFAULT_REL_TOL_1D: f64 = 1e-10;
pub const DEFAULT_REL_TOL_ND: f64 = 1e-8;

const MAX_PIECES: usize = 600;
const TS_MAX_LEVEL: usize = 7;
const TS_MIN_LEVEL: usize = 3;
const TS_T_MAX: f64 = 6.0;

/// Value of a definite integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl IntegralResult {
    pub const ZERO: IntegralResult = IntegralResult { value: 0.0, error_estimate: 0.0, evaluations: 0 };
}

// Gauss–Kronrod 15/7 nodes on [-1, 1] (non-negative half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn non_finite(x: f64) -> Error {
    Error::Numerical { message: format!("integrand is not finite at x = {x}"), partial: None }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64, usize)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    if !fc.is_finite() {
        return Err(non_finite(c));
    }
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let (x1, x2) = (c - dx, c + dx);
        let (f1, f2) = (f(x1), f(x2));
        if !f1.is_finite() {
            return Err(non_finite(x1));
        }
        if !f2.is_finite() {
            return Err(non_finite(x2));
        }
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Ok((kronrod * h, ((kronrod - gauss) * h).abs(), 15))
}

/// Tanh-sinh on `[a, b]`; both ends are clustered. Points within `TS_T_MAX`
/// whose value is not finite are dropped only in the far tails.
fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<(f64, f64, usize)> {
    let half = 0.5 * (b - a);
    let mut evals = 0usize;
    // contribution of abscissa pair ±t (or the centre when t = 0)
    let mut pair = |t: f64| -> Result<f64> {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        let q = 2.0 * e / (1.0 + e);
        let w = half * std::f64::consts::FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if w == 0.0 {
            return Ok(0.0);
        }
        let mut s = 0.0;
        let xs: &[f64] = if t == 0.0 { &[0.0] } else { &[-1.0, 1.0] };
        for &side in xs {
            let x = if side < 0.0 {
                a + half * q
            } else if side > 0.0 {
                b - half * q
            } else {
                a + half
            };
            let v = f(x);
            evals += 1;
            let term = w * v;
            if !term.is_finite() {
                if t.abs() > 3.0 {
                    continue;
                }
                return Err(non_finite(x));
            }
            s += term;
        }
        Ok(s)
    };

    let mut h = 1.0;
    let mut sum = pair(0.0)?;
    let n0 = TS_T_MAX as usize;
    for k in 1..=n0 {
        sum += pair(k as f64)?;
    }
    let mut estimate = h * sum;
    let mut err = f64::INFINITY;
    for level in 1..=TS_MAX_LEVEL {
        h *= 0.5;
        let n = (TS_T_MAX / h).round() as usize;
        let mut k = 1;
        while k <= n {
            sum += pair(k as f64 * h)?;
            k += 2;
        }
        let next = h * sum;
        err = (next - estimate).abs();
        estimate = next;
        if level >= TS_MIN_LEVEL && err <= 0.1 * rel_tol * estimate.abs() {
            break;
        }
    }
    Ok((estimate, err, evals))
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    sing_left: bool,
    sing_right: bool,
    value: f64,
    err: f64,
}

fn eval_piece<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    sing_left: bool,
    sing_right: bool,
    rel_tol: f64,
    evals: &mut usize,
) -> Result<Piece> {
    let (value, err, n) = if sing_left || sing_right {
        tanh_sinh(f, a, b, rel_tol)?
    } else {
        gauss_kronrod(f, a, b)?
    };
    *evals += n;
    Ok(Piece { a, b, sing_left, sing_right, value, err })
}

/// `∫_a^b f` with endpoint singularities flagged by the caller.
pub fn integrate_segment<F>(
    f: F,
    a: f64,
    b: f64,
    singular_left: bool,
    singular_right: bool,
    rel_tol: f64,
) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    integrate_with_breakpoints(f, a, b, &[], singular_left, singular_right, rel_tol)
}

/// Like [`integrate_segment`], with the interval first split at interior
/// `breaks` (kinks or critical points of the integrand).
pub fn integrate_with_breakpoints<F>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    singular_left: bool,
    singular_right: bool,
    rel_tol: f64,
) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidInput(format!("integration bounds must satisfy a < b, got [{a}, {b}]")));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidInput(format!("rel_tol must be positive, got {rel_tol}")));
    }
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut nodes = vec![a];
    nodes.extend(cuts);
    nodes.push(b);

    let mut evals = 0usize;
    let mut pieces = Vec::with_capacity(nodes.len() - 1);
    let last = nodes.len() - 2;
    for (i, w) in nodes.windows(2).enumerate() {
        let sl = singular_left && i == 0;
        let sr = singular_right && i == last;
        pieces.push(eval_piece(&f, w[0], w[1], sl, sr, rel_tol, &mut evals)?);
    }

    loop {
        let total: f64 = pieces.iter().map(|p| p.value).sum();
        let err: f64 = pieces.iter().map(|p| p.err).sum();
        if err <= rel_tol * total.abs() || err <= 1e-300 {
            return Ok(IntegralResult { value: total, error_estimate: err, evaluations: evals });
        }
        let (idx, worst) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, p)| (i, *p))
            .expect("at least one piece");
        let mid = 0.5 * (worst.a + worst.b);
        if pieces.len() >= MAX_PIECES || !(mid > worst.a && mid < worst.b) {
            return Err(Error::Accuracy { best: total, error: err });
        }
        let left = eval_piece(&f, worst.a, mid, worst.sing_left, false, rel_tol, &mut evals)?;
        let right = eval_piece(&f, mid, worst.b, false, worst.sing_right, rel_tol, &mut evals)?;
        pieces[idx] = left;
        pieces.insert(idx + 1, right);
    }
}

/// `∫_Ω Φ(δ(x)) dx = ∫_0^{δ₀} Φ(t)·A(t) dt` for a convex domain, where
/// `A(t)` is the perimeter of the level set `{δ > t}`. The boundary end
/// `t = 0` is treated as singular.
pub fn layer_cake_integral<F>(domain: &ConvexDomain, profile: F, rel_tol: f64) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    layer_cake_with_breakpoints(domain, profile, &[], false, rel_tol)
}

/// [`layer_cake_integral`] with interior breakpoints in `t` and an optional
/// singular flag at the centre end `t = δ₀`.
pub fn layer_cake_with_breakpoints<F>(
    domain: &ConvexDomain,
    profile: F,
    breaks: &[f64],
    singular_center: bool,
    rel_tol: f64,
) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    let d0 = domain.inradius();
    integrate_with_breakpoints(
        |t| {
            let a = domain.area_profile(t);
            if a == 0.0 {
                0.0
            } else {
                profile(t) * a
            }
        },
        0.0,
        d0,
        breaks,
        true,
        singular_center,
        rel_tol,
    )
}

/// Samples per independently seeded chunk.
pub const MC_CHUNK: usize = 4096;

#[derive(Clone, Copy)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    const EMPTY: Moments = Moments { n: 0.0, mean: 0.0, m2: 0.0 };

    fn push(&mut self, v: f64) {
        self.n += 1.0;
        let d = v - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (v - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if o.n == 0.0 {
            return self;
        }
        if self.n == 0.0 {
            return o;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments { n, mean: self.mean + d * o.n / n, m2: self.m2 + o.m2 + d * d * self.n * o.n / n }
    }
}

/// Monte Carlo estimate of `∫_Ω g` from uniform samples, returned as
/// `(value, standard error)`.
///
/// Points come from rejection sampling in the bounding box. Chunk `k` draws
/// from a ChaCha8 stream seeded with `seed` on stream `k`, and chunk results
/// are merged in chunk order, so the result does not depend on thread
/// scheduling.
pub fn monte_carlo_integral<G>(domain: &ConvexDomain, integrand: G, samples: usize, seed: u64) -> (f64, f64)
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    if samples == 0 {
        return (0.0, 0.0);
    }
    let bbox = domain.bounding_box();
    let chunks = samples.div_ceil(MC_CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let n = if k + 1 == chunks { samples - k * MC_CHUNK } else { MC_CHUNK };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut x = vec![0.0; bbox.len()];
            let mut m = Moments::EMPTY;
            let mut accepted = 0;
            while accepted < n {
                for (xi, &(lo, hi)) in x.iter_mut().zip(&bbox) {
                    *xi = lo + (hi - lo) * rng.random::<f64>();
                }
                if !domain.contains(&x) {
                    continue;
                }
                accepted += 1;
                m.push(integrand(&x));
            }
            m
        })
        .collect();
    let m = parts.into_iter().fold(Moments::EMPTY, Moments::merge);
    let vol = domain.volume();
    let var = if m.n > 1.0 { m.m2 / (m.n - 1.0) } else { 0.0 };
    (vol * m.mean, vol * (var / m.n).sqrt())
}

//! Bracketing helpers shared by the zero finders.

/// Walks forward from `start` in steps of `step` and returns the first
/// interval on which `f` changes sign. Exact zeros at a grid point are
/// returned as a degenerate bracket.
pub(crate) fn scan_for_sign_change<F>(f: F, start: f64, step: f64, limit: f64) -> Option<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let mut a = start;
    let mut fa = f(a);
    if fa == 0.0 {
        return Some((a, a));
    }
    while a < limit {
        let b = (a + step).min(limit);
        let fb = f(b);
        if fb == 0.0 {
            return Some((b, b));
        }
        if fa.signum() != fb.signum() {
            return Some((a, b));
        }
        a = b;
        fa = fb;
    }
    None
}

/// Bisects a sign-change bracket down to adjacent floats (or `xtol`).
/// Returns the narrowed bracket and the iteration count.
pub(crate) fn bisect<F>(f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64, usize)
where
    F: Fn(f64) -> f64,
{
    let mut fa = f(a);
    let mut iters = 0;
    while iters < 200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b || (b - a) <= xtol {
            break;
        }
        let fm = f(mid);
        iters += 1;
        if fm == 0.0 {
            return (mid, mid, iters);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    (a, b, iters)
}

/// Newton steps from the middle of `[a, b]`, rejecting any step that
/// leaves the bracket. `fdf` returns the value and derivative.
pub(crate) fn newton_polish<F>(fdf: F, a: f64, b: f64, steps: usize) -> (f64, usize)
where
    F: Fn(f64) -> (f64, f64),
{
    let mut x = 0.5 * (a + b);
    let mut used = 0;
    for _ in 0..steps {
        let (v, dv) = fdf(x);
        if v == 0.0 || dv == 0.0 || !dv.is_finite() {
            break;
        }
        let next = x - v / dv;
        if !(next >= a && next <= b) {
            break;
        }
        used += 1;
        if next == x {
            break;
        }
        x = next;
    }
    (x, used)
}

/// Scan, bisect and polish in one call: the first zero of `f` after `start`.
pub(crate) fn first_root<F, G>(
    f: F,
    fdf: G,
    start: f64,
    step: f64,
    limit: f64,
) -> Option<(f64, (f64, f64), usize)>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> (f64, f64),
{
    let (a, b) = scan_for_sign_change(&f, start, step, limit)?;
    if a == b {
        return Some((a, (a, a), 0));
    }
    let (lo, hi, iters) = bisect(&f, a, b, 0.0);
    let (x, newton) = newton_polish(fdf, lo, hi, 3);
    // keep whichever candidate has the smaller residual
    let best = [lo, hi, x]
        .into_iter()
        .min_by(|p, q| f(*p).abs().total_cmp(&f(*q).abs()))
        .unwrap_or(x);
    Some((best, (a, b), iters + newton))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cosine_root() {
        let (x, (a, b), _) =
            first_root(f64::cos, |x| (x.cos(), -x.sin()), 0.0, 0.1, 10.0).unwrap();
        assert!((x - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(a <= x && x <= b);
    }

    #[test]
    fn no_sign_change_is_none() {
        assert!(scan_for_sign_change(|x| x * x + 1.0, 0.0, 0.1, 5.0).is_none());
    }
}

//! Acceptance gate. Each test prints one `criterion NN: PASS|FAIL ...` line
//! to stderr and fails when the criterion is not met.

use std::f64::consts::PI;
use std::time::Instant;

use hardylamb::bessel::{bessel_j, first_zero, Order};
use hardylamb::lamb::lamb_ode_continuation;
use hardylamb::statements::{
    corollary5_compare, default_sweep, evaluate_statement, lemma2_profile, verify_identity, EvalOptions, Exponents,
    Identity, IdentityInputs, RowStatus, StatementId, SweepOptions, DOMAIN_STATEMENTS, ONE_DIMENSIONAL,
};
use hardylamb::subjects::{parse_function, SegmentSubject, Subject};
use hardylamb::{solve_lamb, solve_lamb_with, LambParams, SolveMethod};

fn check(n: u32, ok: bool, detail: String) {
    eprintln!("criterion {n:02}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n:02}: {detail}");
}

/// Γ at integers and half-integers.
fn gamma_half(x: f64) -> f64 {
    let (mut g, mut t) = if x.fract() == 0.0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while t < x - 1e-12 {
        g *= t;
        t += 1.0;
    }
    while t > x + 1e-12 {
        t -= 1.0;
        g /= t;
    }
    g
}

/// Ascending series for J at integer or half-integer order.
fn series_j(nu: f64, z: f64) -> f64 {
    let mut term = (0.5 * z).powf(nu) / gamma_half(nu + 1.0);
    let mut sum = term;
    for k in 1..90 {
        term *= -(0.25 * z * z) / (k as f64 * (k as f64 + nu));
        sum += term;
    }
    sum
}

/// First sign change of `f` on a uniform scan of `(0, hi)`, refined by bisection.
fn first_root(f: impl Fn(f64) -> f64, hi: f64) -> f64 {
    let n = 4000;
    let h = hi / n as f64;
    let mut a = 0.5 * h;
    let fa = f(a);
    for i in 1..=n {
        let b = (i as f64 + 0.5) * h;
        if f(b) * fa <= 0.0 {
            let mut lo = a;
            let mut up = b;
            for _ in 0..200 {
                let mid = 0.5 * (lo + up);
                if f(mid) * fa > 0.0 {
                    lo = mid;
                } else {
                    up = mid;
                }
            }
            return 0.5 * (lo + up);
        }
        a = b;
    }
    panic!("no sign change below {hi}");
}

#[test]
fn criterion_01_lamb_anchor() {
    let params = LambParams::new(1.0, 1.0, 0.5);
    let _ = solve_lamb(&params);
    let start = Instant::now();
    let r = solve_lamb(&params).unwrap();
    let elapsed = start.elapsed();
    let jp = 2.0 * r.c;
    let ok = (jp - 1.8412).abs() < 5e-5 && elapsed.as_millis() < 10;
    check(1, ok, format!("2c = {jp:.10} vs 1.8412, {elapsed:?}"));
}

#[test]
fn criterion_02_closed_forms() {
    let mut worst_a: f64 = 0.0;
    let mut cells_a = 0;
    for nu in [0.5, 1.0, 2.0] {
        for m in [0.5, 1.0, 2.0] {
            let lambda = (1.0 - m * nu) / 2.0;
            if lambda < 0.0 {
                continue;
            }
            let c = solve_lamb(&LambParams::new(nu, m, lambda)).unwrap().c;
            let zero = first_root(|z| series_j(nu - 1.0, z), 10.0);
            worst_a = worst_a.max((c - 0.5 * m * zero).abs());
            cells_a += 1;
        }
    }
    let mut worst_b: f64 = 0.0;
    let mut cells_b = 0;
    for m in [0.5, 1.0, 2.0] {
        let sigma = 0.5 * (1.0 + 0.5 * m);
        for lambda in [-0.5, 0.25 * sigma, 0.75 * sigma] {
            let z = solve_lamb(&LambParams::new(0.5, m, lambda)).unwrap().z;
            let root = first_root(|z| 2.0 * m * z * z.cos() - (4.0 * lambda + m - 2.0) * z.sin(), PI);
            worst_b = worst_b.max((z - root).abs());
            cells_b += 1;
        }
    }
    let ok = cells_a > 0 && worst_a <= 1e-9 && cells_b == 9 && worst_b <= 1e-10;
    check(2, ok, format!("{cells_a} zero cells max err {worst_a:.2e}; {cells_b} trig cells max err {worst_b:.2e}"));
}

#[test]
fn criterion_03_continuation() {
    let mut worst: f64 = 0.0;
    for (nu, m) in [(1.0, 1.0), (0.5, 2.0)] {
        let anchor = solve_lamb(&LambParams::new(nu, m, 0.0)).unwrap().z;
        let p0 = 2.0 / m;
        for lambda in [0.1, 0.2, 0.3, 0.4] {
            let p1 = 2.0 * (1.0 - 2.0 * lambda) / m;
            let z = lamb_ode_continuation(nu, p0, anchor, p1).unwrap();
            let direct = solve_lamb_with(&LambParams::new(nu, m, lambda), SolveMethod::Bisect).unwrap();
            worst = worst.max((0.5 * m * z - direct.c).abs());
        }
    }
    check(3, worst <= 1e-8, format!("8 continued values, max |c_ode - c_bisect| = {worst:.2e}"));
}

#[test]
fn criterion_04_limit_at_sigma() {
    let mut largest: f64 = 0.0;
    for nu in [0.0, 0.5, 1.0] {
        for m in [0.5, 1.0, 2.0] {
            let lambda = 0.5 * (1.0 + nu * m) - 1e-6;
            largest = largest.max(solve_lamb(&LambParams::new(nu, m, lambda)).unwrap().c);
        }
    }
    check(4, largest < 0.05, format!("max c over 9 cells = {largest:.3e}"));
}

#[test]
fn criterion_05_identities() {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for which in Identity::ALL {
        let r = verify_identity(which, &IdentityInputs::Default).unwrap();
        let limit = if which == Identity::Ode5 { 1e-6 } else { 1e-10 };
        ok &= r.max_residual <= limit;
        if which == Identity::Lemma1 {
            ok &= r.points >= 81;
        }
        parts.push(format!("{}={:.1e}/{}pts", which.name(), r.max_residual, r.points));
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 5.0;
    check(5, ok, format!("{} in {elapsed:?}", parts.join(" ")));
}

#[test]
fn criterion_06_log_derivative() {
    let sets = [(1.0, 1.0, 0.0), (1.0, 1.0, 0.5), (0.5, 2.0, 0.0), (0.0, 1.0, 0.25), (0.25, 2.0, -0.5), (2.0, 0.5, 0.8)];
    let mut ok = true;
    let (mut left, mut right): (f64, f64) = (0.0, 0.0);
    for (nu, m, lambda) in sets {
        let p = lemma2_profile(&LambParams::new(nu, m, lambda), 200, None).unwrap();
        let strictly = p.values.windows(2).all(|w| w[1] < w[0]);
        ok &= p.values.len() == 200 && strictly && p.monotone_decreasing;
        ok &= (p.left_limit - 0.5 * (1.0 + nu * m)).abs() < 1e-4 && p.lambda_err < 1e-8;
        left = left.max(p.left_limit_err);
        right = right.max(p.lambda_err);
    }
    check(6, ok, format!("6 sets, max left-limit err {left:.2e}, max |value(1) - lambda| {right:.2e}"));
}

#[test]
fn criterion_07_equality_witness() {
    let f = parse_function("smoothtent:2").unwrap();
    let subject = Subject::Segment(SegmentSubject::new(f, -1.0, 1.0).unwrap());
    let params = StatementId::EX3S.canonical_params().unwrap();
    let r = evaluate_statement(StatementId::EX3S, &params, &Exponents::default(), &subject, &EvalOptions::default()).unwrap();
    let (l, rhs) = (r.lhs.unwrap(), r.rhs.unwrap());
    // (1 - |x|)^2: both sides equal 2 exactly
    let ok = (l - rhs).abs() <= 1e-8 && (l - 2.0).abs() <= 1e-8 && (rhs - 2.0).abs() <= 1e-8;
    check(7, ok, format!("lhs = {l:.12}, rhs = {rhs:.12}"));
}

#[test]
fn criterion_08_one_dimensional_sweep() {
    let opts = SweepOptions { mc_samples: None, ..SweepOptions::default() };
    let start = Instant::now();
    let r = default_sweep(&ONE_DIMENSIONAL, &opts).unwrap();
    let elapsed = start.elapsed();
    let violated = r.rows.iter().filter(|row| row.verdict == RowStatus::ViolatedBeyondTolerance).count();
    let ok = r.evaluated >= 500 && violated == 0 && r.violations == 0 && elapsed.as_secs() < 120;
    check(8, ok, format!("{} evaluated, {violated} violations, min margin {:?}, {elapsed:?}", r.evaluated, r.min_margin));
}

#[test]
fn criterion_09_domain_sweep() {
    let opts = SweepOptions { mc_samples: Some(100_000), ..SweepOptions::default() };
    let r = default_sweep(&DOMAIN_STATEMENTS, &opts).unwrap();
    let mc_bad = r.mc_checks.iter().filter(|c| !c.ok).count();
    let ok = r.evaluated >= 100 && r.violations == 0 && !r.mc_checks.is_empty() && mc_bad == 0;
    check(
        9,
        ok,
        format!("{} evaluated, {} violations, {} Monte Carlo checks, {mc_bad} outside max(1%, 3 sigma)", r.evaluated, r.violations, r.mc_checks.len()),
    );
}

#[test]
fn criterion_10_constant_comparison() {
    let mut met = 0;
    let mut failed = 0;
    let mut worst = f64::INFINITY;
    for m in [1.25f64, 1.5, 2.0, 2.5, 3.0] {
        for k in [0.25, 0.5, 0.75, 1.0] {
            let nu = k / m;
            let sigma = 0.5 * (1.0 + nu * m);
            let lo = (1.0 + 2.0 * nu * m).sqrt() / 2.0;
            for f in [0.1, 0.3, 0.5, 0.7, 0.9] {
                let lambda = lo + f * (sigma - lo);
                if 2.0 * (1.0 + nu * m) - 4.0 * lambda * lambda > 1.0 {
                    continue;
                }
                met += 1;
                let params = LambParams::new(nu, m, lambda);
                let c = solve_lamb(&params).unwrap().c;
                let big_c = solve_lamb(&LambParams::new(nu, m, 0.0)).unwrap().c;
                let lhs = c * c + (m - 1.0) * (lambda - lambda * lambda);
                let cmp = corollary5_compare(&params).unwrap();
                if lhs > big_c * big_c + 1e-12 || !cmp.holds || !cmp.condition_met {
                    failed += 1;
                }
                worst = worst.min(big_c * big_c - lhs);
            }
        }
    }
    let ok = met >= 50 && failed == 0;
    check(10, ok, format!("{met} cells with the condition met, {failed} failing, min C^2 - lhs = {worst:.3e}"));
}

#[test]
fn criterion_11_determinism() {
    let run = || {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = hardylamb_cli::run_with(["hardylamb", "sweep", "--statement", "all"], &mut out, &mut err);
        (code, out)
    };
    let (c1, a) = run();
    let (c2, b) = run();
    let ok = c1 == 0 && c2 == 0 && !a.is_empty() && a == b;
    check(11, ok, format!("two full sweeps, {} bytes each, identical = {}, exit codes {c1}/{c2}", a.len(), a == b));
}

// Guard against a wrong oracle: the local series must reproduce known zeros.
#[test]
fn oracle_sanity() {
    assert!((first_root(|z| series_j(0.0, z), 5.0) - 2.404825557695773).abs() < 1e-12);
    assert!((first_root(|z| series_j(-0.5, z), 5.0) - PI / 2.0).abs() < 1e-12);
    let lib = first_zero(Order::new(2.0).unwrap()).unwrap().value;
    assert!((first_root(|z| series_j(2.0, z), 8.0) - lib).abs() < 1e-11);
    assert!((series_j(1.5, 2.0) - bessel_j(Order::new(1.5).unwrap(), 2.0).unwrap()).abs() < 1e-14);
}

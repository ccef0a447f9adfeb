use proptest::prelude::*;

use hardylamb::bessel::{bessel_j, bessel_j_prime, first_zero, Order};
use hardylamb::lamb::{lamb_residual, residual_scale};
use hardylamb::quadrature::integrate_segment;
use hardylamb::statements::{
    evaluate_statement, term_integral, EvalOptions, Exponents, InequalityReport, Side, StatementId, SubjectKind,
    TermSpec,
};
use hardylamb::subjects::{make_test_function, Family, SegmentSubject, Subject};
use hardylamb::{solve_lamb, LambParams};

fn term(a: f64, b: f64, s: f64) -> TermSpec {
    TermSpec { side: Side::Lhs, name: "1".into(), base: 1.0, scale_power: 0.0, f_power: a, d_power: b, dist_power: s }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quadrature_is_linear(c0 in -3.0..3.0f64, c1 in -3.0..3.0f64, e in 0.3..2.0f64) {
        let f = |x: f64| x.powf(e) * (1.0 - x);
        let g = |x: f64| (3.0 * x).sin();
        let tol = 1e-12;
        let a = integrate_segment(f, 0.0, 1.0, true, false, tol).unwrap().value;
        let b = integrate_segment(g, 0.0, 1.0, false, false, tol).unwrap().value;
        let ab = integrate_segment(|x| c0 * f(x) + c1 * g(x), 0.0, 1.0, true, false, tol).unwrap().value;
        prop_assert!((ab - (c0 * a + c1 * b)).abs() <= 1e-10 * (1.0 + c0.abs() * a.abs() + c1.abs() * b.abs()));
    }

    #[test]
    fn quadrature_is_additive(split in 0.05..0.95f64, e in -0.7..1.5f64) {
        let f = |x: f64| x.powf(e) + (2.0 * x).cos();
        let whole = integrate_segment(f, 0.0, 1.0, true, false, 1e-12).unwrap().value;
        let left = integrate_segment(f, 0.0, split, true, false, 1e-12).unwrap().value;
        let right = integrate_segment(f, split, 1.0, false, false, 1e-12).unwrap().value;
        prop_assert!((whole - left - right).abs() <= 1e-10 * whole.abs());
        let exact = 1.0 / (e + 1.0) + 2f64.sin() / 2.0;
        prop_assert!((whole - exact).abs() <= 1e-10 * exact.abs());
    }

    #[test]
    fn derivative_matches_finite_difference(nu in 0.0..6.0f64, z in 0.5..15.0f64) {
        let o = Order::new(nu).unwrap();
        let h = 1e-5;
        let fd = (bessel_j(o, z + h).unwrap() - bessel_j(o, z - h).unwrap()) / (2.0 * h);
        prop_assert!((bessel_j_prime(o, z).unwrap() - fd).abs() < 1e-7);
    }

    #[test]
    fn reduction_identity(nu in 0.25..8.0f64, frac in 0.02..1.0f64) {
        // ν J_ν + z J'_ν = z J_{ν−1}
        let o = Order::new(nu).unwrap();
        let z = frac * first_zero(o).unwrap().value;
        let lhs = nu * bessel_j(o, z).unwrap() + z * bessel_j_prime(o, z).unwrap();
        let rhs = z * bessel_j(Order::new(nu - 1.0).unwrap(), z).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10);
    }

    #[test]
    fn lamb_root_contract(nu in 0.0..4.0f64, m in 0.2..3.0f64, t in 0.0..0.98f64, neg in 0.0..2.0f64, branch in any::<bool>()) {
        let sigma = 0.5 * (1.0 + nu * m);
        let lambda = if branch { t * sigma } else { -neg };
        let p = LambParams::new(nu, m, lambda);
        let r = solve_lamb(&p).unwrap();
        let j = first_zero(Order::new(nu).unwrap()).unwrap().value;
        prop_assert!(r.z > 0.0 && r.z < j);
        prop_assert!((r.c - 0.5 * m * r.z).abs() <= 1e-15 * r.c);
        prop_assert!(r.residual.abs() <= 1e-11 * residual_scale(&p).unwrap());
        // no earlier sign change
        let f0 = lamb_residual(&p, 1e-3 * r.z).unwrap();
        for k in 1..50 {
            let f = lamb_residual(&p, r.z * k as f64 / 50.0).unwrap();
            prop_assert!(f * f0 > 0.0);
        }
    }

    #[test]
    fn lamb_constant_decreases_in_lambda(nu in 0.0..3.0f64, m in 0.3..3.0f64, a in 0.0..0.9f64, b in 0.0..0.9f64) {
        let sigma = 0.5 * (1.0 + nu * m);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-3);
        let c_lo = solve_lamb(&LambParams::new(nu, m, lo * sigma)).unwrap().c;
        let c_hi = solve_lamb(&LambParams::new(nu, m, hi * sigma)).unwrap().c;
        prop_assert!(c_hi < c_lo);
    }

    #[test]
    fn segment_scaling_covariance(alpha in 1.6..3.0f64, beta in 1.2..3.0f64, a0 in -2.0..2.0f64, len in 0.3..4.0f64,
                                  fa in 0.0..2.0f64, fb in 0.0..2.0f64, s in 0.0..1.0f64) {
        let u = make_test_function(Family::PowerBump { alpha, beta }).unwrap();
        let unit = Subject::Segment(SegmentSubject::new(u.clone(), 0.0, 1.0).unwrap());
        let moved = Subject::Segment(SegmentSubject::new(u, a0, a0 + len).unwrap());
        let t = term(fa, fb, s);
        let opts = EvalOptions::default();
        for kind in [SubjectKind::OneSided, SubjectKind::TwoSided] {
            let i1 = term_integral(&unit, kind, &t, &opts).unwrap().value;
            let i2 = term_integral(&moved, kind, &t, &opts).unwrap().value;
            // x = a + L τ: dx = L dτ, f' picks up 1/L, δ picks up L
            let expected = i1 * len.powf(1.0 - fb - s);
            prop_assert!((i2 - expected).abs() <= 10.0 * opts.rel_tol_1d * expected.abs().max(1e-300) + 1e-14,
                "{kind:?}: {i2} vs {expected}");
        }
    }

    #[test]
    fn report_json_round_trip(nu in 0.1..1.0f64, lam in 0.0..0.9f64, alpha in 1.6..3.0f64) {
        let p = LambParams::new(nu, 1.0, lam * 0.5 * (1.0 + nu));
        let u = make_test_function(Family::PowerBump { alpha, beta: 2.0 }).unwrap();
        let s = Subject::Segment(SegmentSubject::new(u, -1.0, 1.0).unwrap());
        let r = evaluate_statement(StatementId::T1A, &p, &Exponents::default(), &s, &EvalOptions::default()).unwrap();
        let text = r.to_json();
        let back = InequalityReport::from_json(&text).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(back.to_json(), text);
    }
}

#[test]
fn evaluation_is_deterministic() {
    let p = LambParams::new(0.3, 2.0, 0.4);
    let u = make_test_function(Family::SinePower { alpha: 2.0 }).unwrap();
    let s = Subject::Segment(SegmentSubject::new(u, 0.0, 3.0).unwrap());
    let ex = Exponents::new(Some(2.0), Some(1.5));
    let a = evaluate_statement(StatementId::T2A, &p, &ex, &s, &EvalOptions::default()).unwrap();
    let b = evaluate_statement(StatementId::T2A, &p, &ex, &s, &EvalOptions::default()).unwrap();
    assert_eq!(a.to_json(), b.to_json());
}

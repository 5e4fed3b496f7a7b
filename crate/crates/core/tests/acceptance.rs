//! End-to-end acceptance gate: nine numbered criteria covering the kernel's
//! evaluation routes, its identities, the coefficient certificates, the
//! threshold order, and the special-function substrate. Each criterion
//! prints exactly one pass/fail line and carries a wall-clock budget; the
//! binary exits nonzero if any criterion fails or overruns.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bessel_struve::{
    bs_eval, certify_acharya, certify_cc_odd, coefficient_table, digamma, find_nu0,
    functional_owa_srivastava, functional_s1, ln_gamma, margin_scan, modified_bessel_i,
    modified_struve_l, ode_residual, ratio_bound_slack, recurrence_residual, AnalyticFn,
    CheckStatus, Complex64, DiskGrid, EvalMethod, KernelZb, MarginReport, Order, Property,
    RootBracket, SeriesControl, Subject, LN_SQRT_PI, NU0_DEFAULT_BRACKET,
};
use rand::{Rng, SeedableRng};

/// 4 radii x 64 angles: the 256-point disk grid used by criterion 2.
fn grid_256() -> DiskGrid {
    DiskGrid::new(vec![0.25, 0.5, 0.75, 0.999], 64).unwrap()
}

/// 4 radii x 16 angles: the 64-point disk grid used by criteria 3 and 4.
fn grid_64() -> DiskGrid {
    DiskGrid::new(vec![0.25, 0.5, 0.75, 0.999], 16).unwrap()
}

fn criterion_1_threshold_order() {
    let bracket = RootBracket::for_nu0(NU0_DEFAULT_BRACKET.0, NU0_DEFAULT_BRACKET.1, 1e-8).unwrap();
    let root = find_nu0(&bracket, 1e-8).unwrap();
    assert!(
        (root - 19.6203).abs() <= 5e-4,
        "threshold order {root} missed 19.6203 by more than 5e-4"
    );
}

fn criterion_2_closed_form_oracle() {
    let ctl = SeriesControl::default();
    let methods = [
        EvalMethod::Series,
        EvalMethod::Quadrature,
        EvalMethod::BesselSum,
    ];
    for z in grid_256().points() {
        let oracle = (z.exp() - 1.0) / z;
        for method in methods {
            let got = bs_eval(Order(0.5), z, method, ctl).unwrap();
            let err = (got - oracle).norm();
            assert!(
                err <= 1e-12,
                "{method} route off the half-order closed form by {err} at z = {z}"
            );
        }
    }
}

fn criterion_3_cross_method_agreement() {
    let ctl = SeriesControl::default();
    let grid = grid_64();
    for nu in [0.5, 1.0, 2.0, 5.0, 20.0] {
        for z in grid.points() {
            let s = bs_eval(Order(nu), z, EvalMethod::Series, ctl).unwrap();
            let q = bs_eval(Order(nu), z, EvalMethod::Quadrature, ctl).unwrap();
            let b = bs_eval(Order(nu), z, EvalMethod::BesselSum, ctl).unwrap();
            for (x, y, pair) in [
                (s, q, "series/quadrature"),
                (s, b, "series/bessel_sum"),
                (q, b, "quadrature/bessel_sum"),
            ] {
                let err = (x - y).norm();
                assert!(
                    err <= 1e-9,
                    "{pair} disagreement {err} at nu = {nu}, z = {z}"
                );
            }
        }
    }
    // Below half order the quadrature weight cos^{2 nu} loses smoothness at
    // the endpoint and the route keeps only a relaxed budget.
    for nu in [0.0, 0.25] {
        for z in grid.points() {
            let s = bs_eval(Order(nu), z, EvalMethod::Series, ctl).unwrap();
            let q = bs_eval(Order(nu), z, EvalMethod::Quadrature, ctl).unwrap();
            let b = bs_eval(Order(nu), z, EvalMethod::BesselSum, ctl).unwrap();
            assert!(
                (s - q).norm() <= 1e-6,
                "low-order quadrature disagreement {} at nu = {nu}, z = {z}",
                (s - q).norm()
            );
            assert!(
                (s - b).norm() <= 1e-9,
                "series/bessel_sum disagreement {} at nu = {nu}, z = {z}",
                (s - b).norm()
            );
        }
    }
}

fn criterion_4_identity_residuals() {
    let grid = grid_64();
    // The order recurrence references B at order nu - 1, so its half-order
    // slot shifts to 0.75 to keep the shifted order inside the domain.
    for nu in [0.75, 1.0, 2.0, 5.0, 20.0] {
        for z in grid.points() {
            let res = recurrence_residual(Order(nu), z).unwrap();
            assert!(
                res <= 1e-10,
                "recurrence residual {res} at nu = {nu}, z = {z}"
            );
        }
    }
    for nu in [0.5, 1.0, 2.0, 5.0, 20.0] {
        for z in grid.points() {
            let res = ode_residual(Order(nu), z).unwrap();
            assert!(res <= 1e-9, "ODE residual {res} at nu = {nu}, z = {z}");
        }
    }
}

fn criterion_5_difference_certificate() {
    for nu in [0.5, 0.75, 1.0, 2.0, 5.0, 20.0] {
        let table = coefficient_table(Order(nu), 500).unwrap();
        let report = certify_acharya(&table).unwrap();
        assert!(report.passed, "difference certificate failed at nu = {nu}");
        for n in 1..500 {
            let slack = ratio_bound_slack(Order(nu), n).unwrap();
            assert!(
                slack >= 0.0,
                "ratio bound slack {slack} negative at nu = {nu}, n = {n}"
            );
        }
    }
}

fn criterion_6_threshold_flip() {
    let below = certify_cc_odd(&coefficient_table(Order(19.61), 200).unwrap()).unwrap();
    assert!(!below.passed, "odd certificate passed below the threshold");
    assert_eq!(below.first_violation, Some(1), "flip index below threshold");
    assert_eq!(below.margins[0].label, "head_eight");
    assert!(
        below.margins[1..]
            .iter()
            .all(|m| m.status == CheckStatus::Holds),
        "a tail inequality failed below the threshold"
    );

    let above = certify_cc_odd(&coefficient_table(Order(19.63), 200).unwrap()).unwrap();
    assert!(above.passed, "odd certificate failed above the threshold");
    let binding = above
        .margins
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .unwrap();
    assert_eq!(
        (binding.n, binding.label),
        (1, "head_eight"),
        "the head inequality is not the binding constraint above the threshold"
    );
}

fn criterion_7_starlike_margin_evidence() {
    let grid = DiskGrid::default_grid();
    for nu in [0.5, 1.0, 5.0] {
        let report = margin_scan(
            Order(nu),
            Property::StarlikeLambda,
            0.0,
            0.0,
            &grid,
            Subject::FEqualsZb,
        )
        .unwrap();
        assert!(
            report.extremal_margin > 0.0,
            "starlike margin {} not positive at nu = {nu}",
            report.extremal_margin
        );
        assert!(
            report.to_string().contains(MarginReport::EVIDENCE_LABEL),
            "report rendering lost the evidence-only label"
        );
    }
}

fn criterion_8_beta_collapse() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x4253_6b65_726e_656c);
    let f = KernelZb::new(Order(1.0)).unwrap();
    for _ in 0..1000 {
        let r = 0.001 + 0.998 * rng.gen::<f64>();
        let theta = std::f64::consts::TAU * rng.gen::<f64>();
        let z = Complex64::from_polar(r, theta);
        let at0 = functional_owa_srivastava(&f, 0.0, z).unwrap();
        let s1 = functional_s1(&f, z).unwrap();
        assert!(
            (at0 - s1).abs() <= 1e-14,
            "beta = 0 collapse off by {} at z = {z}",
            (at0 - s1).abs()
        );
        let at1 = functional_owa_srivastava(&f, 1.0, z).unwrap();
        let curvature = (z * f.d2(z).unwrap() / f.d1(z).unwrap()).norm();
        assert!(
            (at1 - curvature).abs() <= 1e-14,
            "beta = 1 collapse off by {} at z = {z}",
            (at1 - curvature).abs()
        );
    }
}

fn criterion_9_special_function_identities() {
    // Legendre duplication in log form on a 100-point log grid.
    let ln2 = std::f64::consts::LN_2;
    for i in 0..100 {
        let x = (1e-3_f64.ln() + (50.0_f64.ln() - 1e-3_f64.ln()) * i as f64 / 99.0).exp();
        let lhs = ln_gamma(x).unwrap() + ln_gamma(x + 0.5).unwrap();
        let rhs = (1.0 - 2.0 * x) * ln2 + LN_SQRT_PI + ln_gamma(2.0 * x).unwrap();
        assert!(
            (lhs - rhs).abs() <= 1e-11,
            "duplication residual {} at x = {x}",
            lhs - rhs
        );
    }
    // Digamma is monotone along a multiplicative sweep of (0, 100].
    let mut prev = digamma(1e-3).unwrap();
    let mut x = 2e-3;
    while x <= 100.0 {
        let cur = digamma(x).unwrap();
        assert!(cur > prev, "digamma not increasing at x = {x}");
        prev = cur;
        x *= 1.07;
    }
    // At nu = 0 the kernel is exactly the sum of the Bessel and Struve
    // cores: B_0(1) = I_0(1) + L_0(1).
    let ctl = SeriesControl::default();
    let one = Complex64::new(1.0, 0.0);
    let split = modified_bessel_i(Order(0.0), one, ctl).unwrap()
        + modified_struve_l(Order(0.0), one, ctl).unwrap();
    let direct = bs_eval(Order(0.0), one, EvalMethod::Series, ctl).unwrap();
    assert!(
        (split - direct).norm() <= 1e-10,
        "I + L split off by {} at nu = 0, z = 1",
        (split - direct).norm()
    );
}

/// Index, display name, wall-clock budget, and body of one criterion.
type Criterion = (usize, &'static str, Duration, fn());

fn main() {
    // Keep caught panics quiet; the criterion line reports the message.
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: &[Criterion] = &[
        (
            1,
            "threshold order reproduction",
            Duration::from_secs(1),
            criterion_1_threshold_order,
        ),
        (
            2,
            "half-order closed-form oracle",
            Duration::from_secs(1),
            criterion_2_closed_form_oracle,
        ),
        (
            3,
            "cross-method agreement",
            Duration::from_secs(5),
            criterion_3_cross_method_agreement,
        ),
        (
            4,
            "recurrence and ODE residuals",
            Duration::from_secs(5),
            criterion_4_identity_residuals,
        ),
        (
            5,
            "difference certificate with ratio slack",
            Duration::from_secs(2),
            criterion_5_difference_certificate,
        ),
        (
            6,
            "odd certificate threshold flip",
            Duration::from_secs(1),
            criterion_6_threshold_flip,
        ),
        (
            7,
            "starlike margin evidence",
            Duration::from_secs(10),
            criterion_7_starlike_margin_evidence,
        ),
        (
            8,
            "mixed functional beta collapse",
            Duration::from_secs(1),
            criterion_8_beta_collapse,
        ),
        (
            9,
            "special-function identity suite",
            Duration::from_secs(1),
            criterion_9_special_function_identities,
        ),
    ];

    let mut failures = 0usize;
    for &(index, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        match outcome {
            Ok(()) if elapsed <= budget => {
                println!("criterion {index} ({name}): PASS ({elapsed:.2?})");
            }
            Ok(()) => {
                failures += 1;
                println!(
                    "criterion {index} ({name}): FAIL (overran its {budget:?} budget: {elapsed:.2?})"
                );
            }
            Err(payload) => {
                failures += 1;
                let message = payload
                    .downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| payload.downcast_ref::<&str>().copied())
                    .unwrap_or("panic without message");
                println!("criterion {index} ({name}): FAIL ({message})");
            }
        }
    }
    let _ = std::panic::take_hook();
    if failures > 0 {
        eprintln!("{failures} of 9 acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 9 acceptance criteria passed");
}

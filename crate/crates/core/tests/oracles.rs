//! Cross-module consistency checks: independent algebraic oracles, series
//! vs. simulator agreement, and exact-arithmetic invariants.

mod common;

use fracstab_core::{
    analyze_characteristic, char_poly_incommensurate, fode3_response, general_fode_response,
    modal_stable, parse_pseudo_polynomial, podlubny_ek, simulate_lti, to_w_polynomial,
    ClosedLoop2x3, Complex64, DMatrix, InputKind, ModalTerm, PseudoPolynomial, RationalOrder,
    ResponseVariant, SeriesBudget, SimConfig, Verdict,
};
use rand::prelude::*;

#[test]
fn pseudo_polynomial_and_lift_agree_on_the_principal_sheet() {
    let mut rng = common::rng(11);
    let mut checked = 0;
    while checked < 100 {
        let p = common::random_pseudo_polynomial(&mut rng);
        let w_poly = to_w_polynomial(&p).unwrap();
        let m = w_poly.m as f64;
        // s away from the branch cut and the origin
        let radius = rng.gen_range(0.5..1.5);
        let theta = rng.gen_range(-3.0..3.0);
        let s = Complex64::from_polar(radius, theta);
        let w = Complex64::from_polar(radius.powf(1.0 / m), theta / m);
        let direct = p.eval(s);
        let lifted = w_poly.eval(w);
        let scale = direct.norm().max(1.0);
        assert!(
            (direct - lifted).norm() <= 1e-12 * scale,
            "s = {s}: direct {direct} vs lifted {lifted}"
        );
        checked += 1;
    }
}

#[test]
fn rational_arithmetic_matches_integer_cross_multiplication() {
    let mut rng = common::rng(12);
    for _ in 0..100 {
        let a_num = rng.gen_range(-40i64..=40);
        let a_den = rng.gen_range(1i64..=24);
        let b_num = rng.gen_range(-40i64..=40);
        let b_den = rng.gen_range(1i64..=24);
        let k = rng.gen_range(-6i64..=6);
        let a = RationalOrder::new(a_num, a_den).unwrap();
        let b = RationalOrder::new(b_num, b_den).unwrap();

        let sum = a.checked_add(&b).unwrap();
        // a/b + c/d = (ad + cb) / bd, compared by cross multiplication
        let lhs = sum.numerator() as i128 * (a_den * b_den) as i128;
        let rhs = (a_num * b_den + b_num * a_den) as i128 * sum.denominator() as i128;
        assert_eq!(lhs, rhs, "{a} + {b} = {sum}");

        let ord = a.cmp(&b);
        let direct = (a_num as i128 * b_den as i128).cmp(&(b_num as i128 * a_den as i128));
        assert_eq!(ord, direct, "compare {a} vs {b}");

        let scaled = a.scale(k).unwrap();
        assert_eq!(
            scaled.numerator() as i128 * a_den as i128,
            a_num as i128 * k as i128 * scaled.denominator() as i128,
            "{a} * {k}"
        );
    }
}

#[test]
fn minimality_holds_for_reduced_orders() {
    // with orders stored in lowest terms the lift never wastes sheets
    let mut rng = common::rng(13);
    for _ in 0..100 {
        let p = common::random_pseudo_polynomial(&mut rng);
        assert!(fracstab_core::is_minimal(&p).unwrap(), "{p:?}");
    }
}

#[test]
fn commensurate_char_poly_roots_power_back_to_eigenvalues() {
    let mut rng = common::rng(14);
    let fractions = [(1i64, 2i64), (1, 3), (2, 3), (3, 4), (4, 5), (7, 10), (5, 4)];
    for case in 0..100 {
        let j = DMatrix::from_fn(3, 3, |_, _| rng.gen_range(-2.0..2.0));
        let (p, r) = fractions[rng.gen_range(0..fractions.len())];
        let q = RationalOrder::new(p, r).unwrap();
        let cp = char_poly_incommensurate(&j, &[q, q, q]).unwrap();
        assert_eq!(cp.m, r);
        let mut roots = fracstab_core::roots::find_all_roots(&cp.poly.coeffs).unwrap();

        // one Newton polish against the characteristic polynomial
        for w in roots.iter_mut() {
            for _ in 0..2 {
                let (mut val, mut der) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
                for &c in cp.poly.coeffs.iter().rev() {
                    der = der * *w + val;
                    val = val * *w + c;
                }
                if der.norm() > 0.0 {
                    *w -= val / der;
                }
            }
        }

        let eig = j.clone().complex_eigenvalues();
        for mu in eig.iter() {
            let mu = Complex64::new(mu.re, mu.im);
            let closest = roots
                .iter()
                .map(|l| (l.powi(p as i32) - mu).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(
                closest <= 1e-8 * (1.0 + mu.norm()),
                "case {case}: eigenvalue {mu} unmatched (distance {closest:.2e}, q = {q})"
            );
        }
    }
}

/// Random stable two-term systems: analytic impulse response against the
/// GL simulation of the companion form, within max(1e-3, 1%) wherever the
/// series converged. Also checks the power-law decay envelope.
#[test]
fn analytic_and_simulated_impulse_responses_agree() {
    let mut rng = common::rng(15);
    let budget = SeriesBudget::default();
    let h = 1e-3;
    for case in 0..10 {
        let alpha: f64 = rng.gen_range(0.3..1.8);
        let b: f64 = rng.gen_range(0.2..2.5);
        let den = PseudoPolynomial::new(vec![
            (1.0, RationalOrder::new((alpha * 20.0).round() as i64, 20).unwrap()),
            (b, RationalOrder::ZERO),
        ]);
        let alpha = den.terms()[0].1.as_f64(); // snapped to a rational grid

        let report = analyze_characteristic(&den).unwrap();
        let grid: Vec<f64> = (1..=49).map(|i| 0.1 * i as f64 + 0.1).collect();
        let analytic =
            general_fode_response(&den, ResponseVariant::Impulse, &grid, &budget).unwrap();

        let cfg = SimConfig { h, t_end: 5.0, memory: None, x0: vec![0.0] };
        let traj = simulate_lti(&den, InputKind::Impulse, &cfg).unwrap();

        let mut compared = 0;
        for point in &analytic {
            if !point.converged {
                continue;
            }
            let sim = traj.state_at(point.t, 0).unwrap();
            let err = (point.value - sim).abs();
            assert!(
                err <= 1e-3 || err <= 1e-2 * point.value.abs(),
                "case {case} (alpha={alpha:.3}, b={b:.3}), t={}: analytic {} vs GL {sim}",
                point.t,
                point.value
            );
            compared += 1;
        }
        assert!(
            compared >= grid.len() / 2,
            "case {case}: only {compared} of {} points converged",
            grid.len()
        );

        // stable systems decay after the peak
        if report.verdict == Verdict::Stable {
            let peak = analytic
                .iter()
                .filter(|p| p.converged)
                .max_by(|a, b| a.value.abs().partial_cmp(&b.value.abs()).unwrap())
                .unwrap();
            let late_t = 10.0 * peak.t;
            if late_t <= 5.0 {
                let late = traj.state_at(late_t, 0).unwrap();
                assert!(
                    late.abs() < peak.value.abs(),
                    "case {case}: |y({late_t})| = {} not below peak {}",
                    late.abs(),
                    peak.value.abs()
                );
            }
        }
    }
}

#[test]
fn three_term_fast_path_matches_general_path_on_random_systems() {
    let mut rng = common::rng(16);
    let budget = SeriesBudget::default();
    let grid = [0.3, 1.0, 2.0, 4.0];
    for case in 0..20 {
        let a2: f64 = rng.gen_range(0.5..2.0);
        let a1: f64 = rng.gen_range(-1.0..1.5);
        let a0: f64 = rng.gen_range(0.2..2.0);
        let alpha2 = RationalOrder::new(rng.gen_range(11..=19), 10).unwrap();
        let alpha1 = RationalOrder::new(rng.gen_range(3..=9), 10).unwrap();
        let den = PseudoPolynomial::new(vec![
            (a2, alpha2),
            (a1, alpha1),
            (a0, RationalOrder::ZERO),
        ]);
        if den.len() != 3 {
            continue;
        }
        let fast = fode3_response(&den, ResponseVariant::Impulse, &grid, &budget).unwrap();
        let general =
            general_fode_response(&den, ResponseVariant::Impulse, &grid, &budget).unwrap();
        for (f, g) in fast.iter().zip(&general) {
            assert_eq!(f.converged, g.converged, "case {case}, t = {}", f.t);
            if f.converged {
                assert!(
                    (f.value - g.value).abs() <= 1e-9 * (1.0 + f.value.abs()),
                    "case {case}, t = {}: {} vs {}",
                    f.t,
                    f.value,
                    g.value
                );
            }
        }
    }
}

#[test]
fn heater_closed_loop_series_agrees_with_simulation() {
    // (12.46 s + 64.47) / (39.69 s^1.25 + 12.46 s + 65.068): series vs the
    // GL companion simulation with output y = 64.47 x1 + 12.46 x2
    let loop_tf = ClosedLoop2x3::new(12.46, 64.47, 39.69, 12.46, 65.068, 1.25, 1.0).unwrap();
    let grid: Vec<f64> = vec![0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0];
    let budget = SeriesBudget::default();
    let series = loop_tf.response(&grid, &budget).unwrap();

    let den = parse_pseudo_polynomial("39.69*s^1.25+12.46*s+65.068").unwrap();
    let cfg = SimConfig { h: 1e-3, t_end: 5.0, memory: None, x0: vec![0.0, 0.0] };
    let traj = simulate_lti(&den, InputKind::Impulse, &cfg).unwrap();

    for point in &series {
        assert!(point.converged, "series did not converge at t = {}", point.t);
        let k = (point.t / cfg.h).round() as usize;
        let sim = 64.47 * traj.states[k][0] + 12.46 * traj.states[k][1];
        assert!(
            (point.value - sim).abs() <= 1e-2,
            "t = {}: series {} vs GL {sim}",
            point.t,
            point.value
        );
    }

    // bounded late response: the loop is stable
    let late = series.last().unwrap();
    assert!(late.value.abs() < 0.1);
}

#[test]
fn degree22_impulse_response_decays_by_t50_under_simulation() {
    let den = parse_pseudo_polynomial("0.8*s^2.2+0.5*s^0.9+1").unwrap();
    let cfg = SimConfig { h: 5e-3, t_end: 50.0, memory: None, x0: vec![0.0, 0.0] };
    let traj = simulate_lti(&den, InputKind::Impulse, &cfg).unwrap();
    assert!(traj.diverged_at.is_none());
    let y50 = traj.state_at(50.0, 0).unwrap();
    assert!(y50.abs() < 1e-2, "y(50) = {y50}");
    let peak = traj.states.iter().map(|r| r[0].abs()).fold(0.0, f64::max);
    assert!(peak > 0.5, "peak {peak} unexpectedly small");
}

#[test]
fn modal_verdict_consistent_with_sheet_analysis() {
    // 1/(s^0.5 + 1) has no physical pole; the modal term (q=0.5, lambda=1)
    // must agree
    let den = parse_pseudo_polynomial("s^0.5+1").unwrap();
    let report = analyze_characteristic(&den).unwrap();
    assert_eq!(report.verdict, Verdict::Stable);
    let term =
        ModalTerm::new(0.5, Complex64::new(1.0, 0.0), 1, Complex64::new(1.0, 0.0)).unwrap();
    assert!(modal_stable(&[term]));

    // 1/(s^0.5 - 1) has the pole s = 1 on the physical sheet
    let den = parse_pseudo_polynomial("s^0.5-1").unwrap();
    let report = analyze_characteristic(&den).unwrap();
    assert_eq!(report.verdict, Verdict::Unstable);
    let term =
        ModalTerm::new(0.5, Complex64::new(-1.0, 0.0), 1, Complex64::new(1.0, 0.0)).unwrap();
    assert!(!modal_stable(&[term]));
}

#[test]
fn half_order_impulse_kernel_matches_podlubny_building_block() {
    // g(t) = E_0(t, -b; a, a) for 1/(s^a + b)
    let den = parse_pseudo_polynomial("s^0.5+1").unwrap();
    let budget = SeriesBudget::default();
    let grid = [0.25, 1.0, 2.0];
    let pts = general_fode_response(&den, ResponseVariant::Impulse, &grid, &budget).unwrap();
    for p in &pts {
        let kernel = podlubny_ek(0, p.t, -1.0, 0.5, 0.5).unwrap();
        assert!((p.value - kernel).abs() < 1e-12);
    }
}

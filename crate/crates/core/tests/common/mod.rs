//! Shared helpers for the integration and acceptance suites: seeded
//! generators and the randomized property checks required to hold with at
//! least 100 cases each.
#![allow(dead_code)] // each test target uses its own subset

use fracstab_core::{
    classify_roots, find_roots, jacobian_at, matrix_sector_test, parse_pseudo_polynomial,
    pseudo_polynomial_to_string, to_w_polynomial, Complex64, DMatrix, MultiPolynomial,
    PolynomialVectorField, PseudoPolynomial, RationalOrder, Sector, Verdict,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xF05A_2F00 ^ salt)
}

/// Random pseudo-polynomial whose lift stays at a moderate degree.
pub fn random_pseudo_polynomial(rng: &mut ChaCha8Rng) -> PseudoPolynomial {
    const DENS: [i64; 6] = [1, 2, 3, 4, 5, 10];
    loop {
        let n_terms = rng.gen_range(2..=4);
        let mut terms = Vec::with_capacity(n_terms);
        for _ in 0..n_terms {
            let den = DENS[rng.gen_range(0..DENS.len())];
            let num = rng.gen_range(0..=12);
            let mut coeff: f64 = rng.gen_range(-3.0..3.0);
            if coeff.abs() < 0.1 {
                coeff = coeff.signum() * 0.1 + coeff;
            }
            terms.push((coeff, RationalOrder::new(num, den).unwrap()));
        }
        let p = PseudoPolynomial::new(terms);
        if p.len() < 2 {
            continue;
        }
        match to_w_polynomial(&p) {
            Ok(w) if (1..=40).contains(&w.degree()) => return p,
            _ => continue,
        }
    }
}

/// Property: the lift of a random pseudo-polynomial has exactly
/// `fdeg` roots.
pub fn check_root_count_equals_fdeg(cases: usize) {
    let mut rng = rng(1);
    for case in 0..cases {
        let p = random_pseudo_polynomial(&mut rng);
        let w = to_w_polynomial(&p).unwrap();
        let roots = find_roots(&w).unwrap();
        assert_eq!(
            roots.len(),
            w.degree(),
            "case {case}: {} roots for degree {}",
            roots.len(),
            w.degree()
        );
    }
}

/// Property: root sets of real-coefficient lifts are closed under
/// conjugation (paired within 1e-10).
pub fn check_conjugate_pairing(cases: usize) {
    let mut rng = rng(2);
    for case in 0..cases {
        let p = random_pseudo_polynomial(&mut rng);
        let w = to_w_polynomial(&p).unwrap();
        let roots = find_roots(&w).unwrap();
        let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
        for r in &roots {
            let conj = r.conj();
            let closest = roots.iter().map(|o| (o - conj).norm()).fold(f64::INFINITY, f64::min);
            assert!(
                closest <= 1e-10 * scale,
                "case {case}: conjugate of {r} missing (distance {closest:.2e})"
            );
        }
    }
}

/// Builds an integer-order polynomial from prescribed roots (real ones and
/// conjugate pairs), returning ascending real coefficients.
fn poly_from_roots(reals: &[f64], pairs: &[(f64, f64)]) -> Vec<f64> {
    let mut coeffs = vec![1.0];
    let mut push = |factor: Vec<f64>| {
        let mut next = vec![0.0; coeffs.len() + factor.len() - 1];
        for (i, &a) in coeffs.iter().enumerate() {
            for (j, &b) in factor.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        coeffs = next;
    };
    for &r in reals {
        push(vec![-r, 1.0]); // (s - r)
    }
    for &(re, im) in pairs {
        // (s - re)^2 + im^2
        push(vec![re * re + im * im, -2.0 * re, 1.0]);
    }
    coeffs
}

/// Property: for integer orders (m = 1) the verdict agrees with the
/// classical left-half-plane check on polynomials with known roots.
pub fn check_classical_agreement(cases: usize) {
    let mut rng = rng(3);
    for case in 0..cases {
        let n_real = rng.gen_range(0..=3);
        let n_pairs = rng.gen_range(0..=2);
        if n_real + n_pairs == 0 {
            continue;
        }
        let sample_re = |rng: &mut ChaCha8Rng| -> f64 {
            let mag = rng.gen_range(0.05..3.0);
            if rng.gen_bool(0.5) {
                mag
            } else {
                -mag
            }
        };
        let reals: Vec<f64> = (0..n_real).map(|_| sample_re(&mut rng)).collect();
        let pairs: Vec<(f64, f64)> =
            (0..n_pairs).map(|_| (sample_re(&mut rng), rng.gen_range(0.1..3.0))).collect();
        let all_lhp =
            reals.iter().all(|&r| r < 0.0) && pairs.iter().all(|&(re, _)| re < 0.0);

        let coeffs = poly_from_roots(&reals, &pairs);
        let terms: Vec<(f64, RationalOrder)> = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, RationalOrder::from_integer(i as i64)))
            .collect();
        let p = PseudoPolynomial::new(terms);
        let report = fracstab_core::analyze_characteristic(&p).unwrap();
        assert_eq!(report.m, 1, "case {case}");
        assert_eq!(
            report.verdict == Verdict::Stable,
            all_lhp,
            "case {case}: verdict {:?} for roots {reals:?} {pairs:?}",
            report.verdict
        );
    }
}

/// Property: physical roots satisfy `|arg(w^m)| = m |arg w|` within 1e-9.
pub fn check_argument_scaling(cases: usize) {
    let mut rng = rng(4);
    for case in 0..cases {
        let m = rng.gen_range(1..=10);
        let radius = rng.gen_range(0.2..2.0);
        let arg_limit = PI / m as f64;
        let theta = rng.gen_range(-arg_limit * 0.999..arg_limit * 0.999);
        let w = Complex64::from_polar(radius, theta);
        let classified = classify_roots(&[w], m as i64);
        let root = &classified[0];
        assert_ne!(root.sector, Sector::NonPhysical, "case {case}");
        let s = root.s_pole.expect("physical root has an s-pole");
        assert!(
            (s.arg().abs() - m as f64 * root.abs_arg).abs() <= 1e-9,
            "case {case}: |arg s| = {}, m|arg w| = {}",
            s.arg().abs(),
            m as f64 * root.abs_arg
        );
    }
}

/// Property: the Kronecker sector test agrees with direct eigenvalue
/// arguments `|arg(lambda)| > pi/2 + delta` (boundary cases skipped).
pub fn check_sector_test_agreement(cases: usize) {
    let mut rng = rng(5);
    let mut done = 0;
    while done < cases {
        let a = DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-2.0..2.0));
        let delta = rng.gen_range(0.05..PI / 2.0 - 0.05);
        let eig = a.clone().complex_eigenvalues();
        let edge = PI / 2.0 + delta;
        if eig.iter().any(|l| (Complex64::new(l.re, l.im).arg().abs() - edge).abs() < 1e-6) {
            continue; // too close to the sector edge to compare reliably
        }
        let direct = eig
            .iter()
            .all(|l| Complex64::new(l.re, l.im).arg().abs() > edge);
        let tested = matrix_sector_test(&a, delta).unwrap();
        assert_eq!(tested, direct, "delta = {delta}, matrix {a}");
        done += 1;
    }
}

/// Random polynomial vector field with modest degrees.
pub fn random_field(rng: &mut ChaCha8Rng) -> PolynomialVectorField {
    let dim = rng.gen_range(1..=3);
    let components: Vec<MultiPolynomial> = (0..dim)
        .map(|_| {
            let n_mono = rng.gen_range(1..=4);
            let monomials: Vec<(f64, Vec<u32>)> = (0..n_mono)
                .map(|_| {
                    let exps: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..=3)).collect();
                    (rng.gen_range(-2.0..2.0), exps)
                })
                .collect();
            MultiPolynomial::new(dim, monomials).unwrap()
        })
        .collect();
    let orders = vec![RationalOrder::new(1, 2).unwrap(); dim];
    PolynomialVectorField::new(orders, components).unwrap()
}

/// Property: the exact Jacobian matches central finite differences.
pub fn check_jacobian_finite_difference(cases: usize) {
    let mut rng = rng(6);
    for case in 0..cases {
        let field = random_field(&mut rng);
        let n = field.dim();
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.5..1.5)).collect();
        let j = jacobian_at(&field, &x);
        for col in 0..n {
            let h = 1e-6 * (1.0 + x[col].abs());
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[col] += h;
            xm[col] -= h;
            let fp = field.eval_vec(&xp);
            let fm = field.eval_vec(&xm);
            for row in 0..n {
                let fd = (fp[row] - fm[row]) / (2.0 * h);
                let exact = j[(row, col)];
                assert!(
                    (fd - exact).abs() <= 1e-5 * (1.0 + exact.abs()),
                    "case {case}: d f{row}/d x{col}: fd {fd} vs exact {exact}"
                );
            }
        }
    }
}

/// Random pseudo-polynomial for printing (arbitrary coefficients and
/// orders, including integers and zero).
fn random_printable(rng: &mut ChaCha8Rng) -> PseudoPolynomial {
    const DENS: [i64; 7] = [1, 1, 2, 3, 4, 7, 10];
    let n_terms = rng.gen_range(1..=5);
    let terms: Vec<(f64, RationalOrder)> = (0..n_terms)
        .map(|_| {
            let den = DENS[rng.gen_range(0..DENS.len())];
            let num = rng.gen_range(0..=15);
            let coeff: f64 = rng.gen_range(-40.0..40.0);
            (coeff, RationalOrder::new(num, den).unwrap())
        })
        .collect();
    PseudoPolynomial::new(terms)
}

/// Property: `parse(print(p)) == p` exactly, including coefficient bits.
pub fn check_parse_print_round_trip(cases: usize) {
    let mut rng = rng(7);
    let mut done = 0;
    while done < cases {
        let p = random_printable(&mut rng);
        if p.is_empty() {
            continue;
        }
        let text = pseudo_polynomial_to_string(&p);
        let reparsed = parse_pseudo_polynomial(&text).unwrap_or_else(|e| {
            panic!("printed form {text:?} failed to parse: {e}");
        });
        assert_eq!(p, reparsed, "through {text:?}");
        done += 1;
    }
}

//! All complex roots of a real-coefficient dense polynomial by
//! simultaneous Aberth-Ehrlich iteration with a Newton polish.
//!
//! Written for the sparse, moderately high-degree polynomials the w-plane
//! lift produces (e.g. `0.8 w^22 + 0.5 w^9 + 1`). Guaranteed-accuracy
//! contract covers degrees up to 64.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Backward-error bound each returned root satisfies:
/// `|p(w)| / sum_i |a_i| |w|^i <= BACKWARD_ERROR_BOUND`.
pub const BACKWARD_ERROR_BOUND: f64 = 1e-12;

const MAX_SWEEPS: usize = 400;
const RESTART_OFFSETS: [f64; 3] = [0.3923, 1.1071, 2.4189];

fn horner(coeffs: &[f64], w: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * w + p;
        p = p * w + c;
    }
    (p, dp)
}

/// `sum_i |a_i| |w|^i`, the scale for the backward error of `p(w)`.
fn eval_scale(coeffs: &[f64], w_abs: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * w_abs + c.abs();
    }
    acc
}

fn backward_error(coeffs: &[f64], w: Complex64) -> f64 {
    let (p, _) = horner(coeffs, w);
    let scale = eval_scale(coeffs, w.norm());
    if scale == 0.0 {
        p.norm()
    } else {
        p.norm() / scale
    }
}

fn aberth_pass(coeffs: &[f64], degree: usize, offset: f64) -> Vec<Complex64> {
    // initial guesses on a perturbed circle of radius (|a_0/a_N|)^(1/N)
    let radius = (coeffs[0].abs() / coeffs[degree].abs()).powf(1.0 / degree as f64).max(1e-3);
    let mut ws: Vec<Complex64> = (0..degree)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + offset;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut max_step = 0.0f64;
        let snapshot = ws.clone();
        for i in 0..degree {
            let w = snapshot[i];
            let (p, dp) = horner(coeffs, w);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() == 0.0 {
                // nudge off a critical point
                Complex64::new(1e-8 * (1.0 + w.norm()), 1e-8)
            } else {
                p / dp
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &other) in snapshot.iter().enumerate() {
                if j != i {
                    let d = w - other;
                    if d.norm() > 1e-300 {
                        repulsion += 1.0 / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() < 1e-300 { newton } else { newton / denom };
            ws[i] = w - step;
            max_step = max_step.max(step.norm() / (1.0 + ws[i].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }

    // one Newton polish per root
    for w in ws.iter_mut() {
        let (p, dp) = horner(coeffs, *w);
        if dp.norm() > 0.0 {
            let step = p / dp;
            if step.norm() < 1e-3 * (1.0 + w.norm()) {
                *w -= step;
            }
        }
    }
    ws
}

/// Finds all `degree` roots (with multiplicity) of the polynomial with
/// ascending real coefficients `coeffs` (index = degree). Roots are sorted
/// by descending real part, then descending imaginary part.
pub fn find_all_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
        coeffs.pop();
    }
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Err(Error::InvalidInput("root finding needs degree >= 1".into()));
    }

    // deflate exact zero roots (no constant term)
    let zero_count = coeffs.iter().take_while(|&&c| c == 0.0).count();
    let mut roots = vec![Complex64::new(0.0, 0.0); zero_count];
    let reduced: Vec<f64> = coeffs[zero_count..].to_vec();
    let reduced_degree = reduced.len() - 1;

    if reduced_degree > 0 {
        // monic scaling for conditioning
        let lead = *reduced.last().unwrap();
        let monic: Vec<f64> = reduced.iter().map(|c| c / lead).collect();

        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for &offset in &RESTART_OFFSETS {
            let ws = aberth_pass(&monic, reduced_degree, offset);
            let worst = ws
                .iter()
                .map(|&w| backward_error(&monic, w))
                .fold(0.0f64, f64::max);
            if best.as_ref().map_or(true, |(b, _)| worst < *b) {
                best = Some((worst, ws));
            }
            if best.as_ref().unwrap().0 <= BACKWARD_ERROR_BOUND {
                break;
            }
        }
        let (worst, ws) = best.unwrap();
        if worst > BACKWARD_ERROR_BOUND {
            return Err(Error::Numeric(format!(
                "root finder backward error {worst:.3e} exceeds {BACKWARD_ERROR_BOUND:.0e} \
                 for degree-{reduced_degree} polynomial"
            )));
        }
        roots.extend(ws);
    }

    roots.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(b.im.partial_cmp(&a.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(roots)
}

/// Groups roots closer than `1e-8 * scale` into clusters; returns the
/// representative and the cluster size for clusters larger than one.
/// Used to note likely multiple roots.
pub fn root_clusters(roots: &[Complex64]) -> Vec<(Complex64, usize)> {
    let scale = roots.iter().map(|r| r.norm()).fold(1.0f64, f64::max);
    let tol = 1e-8 * scale;
    let mut used = vec![false; roots.len()];
    let mut clusters = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut size = 1;
        for j in (i + 1)..roots.len() {
            if !used[j] && (roots[i] - roots[j]).norm() < tol {
                used[j] = true;
                size += 1;
            }
        }
        if size > 1 {
            clusters.push((roots[i], size));
        }
    }
    clusters
}

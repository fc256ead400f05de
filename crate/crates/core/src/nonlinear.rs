//! Equilibria of polynomial vector fields, exact Jacobians, the
//! incommensurate characteristic determinant and chaos order bounds.

use crate::error::{Error, Result};
use crate::field::PolynomialVectorField;
use crate::linalg;
use crate::lti::ARG_TOLERANCE;
use crate::orders::{lcm_of_orders, RationalOrder, WPolynomial};
use crate::roots::find_all_roots;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Hard cap on the determinant dimension (cofactor expansion).
pub const MAX_DETERMINANT_DIM: usize = 6;

/// Hard cap on the lifted characteristic degree `m * sum(q_i)`.
pub const MAX_CHAR_DEGREE: usize = 200;

/// A converged equilibrium point with its residual `max_i |f_i(x*)|`.
#[derive(Debug, Clone)]
pub struct Equilibrium {
    pub x: Vec<f64>,
    pub residual: f64,
}

/// Outcome of a multi-seed Newton search. Seeds that fail to converge are
/// reported in `diagnostics`, not as errors.
#[derive(Debug, Clone)]
pub struct EquilibriumSearch {
    pub equilibria: Vec<Equilibrium>,
    pub diagnostics: Vec<String>,
}

/// Exact Jacobian of the field evaluated at `x`.
pub fn jacobian_at(field: &PolynomialVectorField, x: &[f64]) -> DMatrix<f64> {
    let n = field.dim();
    let mut j = DMatrix::<f64>::zeros(n, n);
    for (i, component) in field.components().iter().enumerate() {
        for v in 0..n {
            j[(i, v)] = component.partial(v).eval(x);
        }
    }
    j
}

/// Damped Newton iteration from every seed; converged points are refined to
/// full double precision, deduplicated (distance < 1e-6) and sorted.
pub fn find_equilibria(field: &PolynomialVectorField, seeds: &[Vec<f64>]) -> Result<EquilibriumSearch> {
    if seeds.is_empty() {
        return Err(Error::InvalidInput("equilibrium search needs at least one seed".into()));
    }
    let n = field.dim();
    let scale = field.coeff_scale();
    let accept = 1e-9 * (1.0 + scale);
    let mut found: Vec<Equilibrium> = Vec::new();
    let mut diagnostics = Vec::new();

    for seed in seeds {
        if seed.len() != n {
            return Err(Error::InvalidInput(format!(
                "seed of length {} for a {n}-dimensional field",
                seed.len()
            )));
        }
        let mut x = DVector::from_column_slice(seed);
        let mut residual = f64::INFINITY;
        let mut converged = false;
        for _ in 0..200 {
            let fx = DVector::from_vec(field.eval_vec(x.as_slice()));
            residual = fx.amax();
            if !residual.is_finite() {
                break;
            }
            let j = jacobian_at(field, x.as_slice());
            let step = match j.lu().solve(&fx) {
                Some(s) => s,
                None => break,
            };
            // backtracking damping on the residual norm
            let mut t = 1.0;
            let mut advanced = false;
            for _ in 0..25 {
                let candidate = &x - &step * t;
                let fc = DVector::from_vec(field.eval_vec(candidate.as_slice()));
                let rc = fc.amax();
                if rc < residual || rc <= accept {
                    x = candidate;
                    advanced = true;
                    break;
                }
                t *= 0.5;
            }
            if !advanced {
                break;
            }
            // refine to full precision: stop once the residual is at the
            // noise floor and no longer improves
            let fx = DVector::from_vec(field.eval_vec(x.as_slice()));
            let new_residual = fx.amax();
            if new_residual <= 1e-13 * (1.0 + scale) && new_residual >= residual {
                residual = new_residual;
                converged = true;
                break;
            }
            residual = new_residual;
            if residual <= 1e-15 * (1.0 + scale) {
                converged = true;
                break;
            }
        }
        if converged || residual <= accept {
            let point = Equilibrium { x: x.as_slice().to_vec(), residual };
            match found.iter_mut().find(|e| {
                e.x.iter()
                    .zip(&point.x)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
                    < 1e-6
            }) {
                Some(existing) => {
                    if point.residual < existing.residual {
                        *existing = point;
                    }
                }
                None => found.push(point),
            }
        } else {
            diagnostics.push(format!(
                "seed {:?} did not converge (residual {residual:.3e})",
                seed
            ));
        }
    }

    found.sort_by(|a, b| {
        a.x.partial_cmp(&b.x).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(EquilibriumSearch { equilibria: found, diagnostics })
}

// --- dense univariate polynomial arithmetic for the determinant -------------

#[derive(Debug, Clone)]
struct UniPoly(Vec<f64>); // ascending coefficients; empty = zero

impl UniPoly {
    fn zero() -> Self {
        Self(Vec::new())
    }

    fn constant(c: f64) -> Self {
        if c == 0.0 {
            Self::zero()
        } else {
            Self(vec![c])
        }
    }

    /// `lambda^power - c`
    fn power_minus(power: usize, c: f64) -> Self {
        let mut v = vec![0.0; power + 1];
        v[0] = -c;
        v[power] = 1.0;
        Self(v)
    }

    fn add(&self, other: &Self) -> Self {
        let mut v = vec![0.0; self.0.len().max(other.0.len())];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] += c;
        }
        Self(v)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self::zero();
        }
        let mut v = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self(v)
    }

    fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }
}

fn determinant(matrix: &[Vec<UniPoly>]) -> UniPoly {
    let n = matrix.len();
    if n == 1 {
        return matrix[0][0].clone();
    }
    let mut acc = UniPoly::zero();
    for (col, entry) in matrix[0].iter().enumerate() {
        if entry.0.is_empty() {
            continue;
        }
        let minor: Vec<Vec<UniPoly>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let cofactor = entry.mul(&determinant(&minor));
        acc = if col % 2 == 0 { acc.add(&cofactor) } else { acc.add(&cofactor.neg()) };
    }
    acc
}

/// Characteristic polynomial of an incommensurate linearization: with `m`
/// the LCM of the order denominators and `gamma = 1/m`, the determinant of
/// `diag(lambda^(m q_1) .. lambda^(m q_n)) - J` as an ordinary polynomial
/// in `lambda`.
#[derive(Debug, Clone)]
pub struct IncommensurateCharPoly {
    pub gamma: RationalOrder,
    pub m: i64,
    pub poly: WPolynomial,
}

/// Builds the characteristic polynomial by cofactor expansion with exact
/// dense coefficient arithmetic. `n <= 6` and lifted degree `<= 200`.
pub fn char_poly_incommensurate(
    j: &DMatrix<f64>,
    q: &[RationalOrder],
) -> Result<IncommensurateCharPoly> {
    let n = j.nrows();
    if j.ncols() != n {
        return Err(Error::InvalidInput("characteristic determinant needs a square matrix".into()));
    }
    if n == 0 || n > MAX_DETERMINANT_DIM {
        return Err(Error::Unsupported(format!(
            "characteristic determinant supports 1..={MAX_DETERMINANT_DIM} states, got {n}"
        )));
    }
    if q.len() != n {
        return Err(Error::InvalidInput(format!("{} orders for {n} states", q.len())));
    }
    for qi in q {
        let v = qi.as_f64();
        if !(v > 0.0 && v < 2.0) {
            return Err(Error::Domain(format!("order {qi} outside (0, 2)")));
        }
    }
    let m = lcm_of_orders(q)?;
    let mut exponents = Vec::with_capacity(n);
    let mut total: i64 = 0;
    for qi in q {
        let e = qi.times_integer_exact(m)?;
        total += e;
        exponents.push(e as usize);
    }
    if total > MAX_CHAR_DEGREE as i64 {
        return Err(Error::Unsupported(format!(
            "lifted characteristic degree {total} exceeds {MAX_CHAR_DEGREE}"
        )));
    }

    let matrix: Vec<Vec<UniPoly>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        UniPoly::power_minus(exponents[r], j[(r, c)])
                    } else {
                        UniPoly::constant(-j[(r, c)])
                    }
                })
                .collect()
        })
        .collect();
    let det = determinant(&matrix);
    let mut coeffs = det.0;
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
        coeffs.pop();
    }
    Ok(IncommensurateCharPoly {
        gamma: RationalOrder::new(1, m)?,
        m,
        poly: WPolynomial { coeffs, m },
    })
}

/// Verdict for an equilibrium point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumVerdict {
    Stable,
    Marginal,
    Unstable,
}

impl EquilibriumVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            EquilibriumVerdict::Stable => "STABLE",
            EquilibriumVerdict::Marginal => "MARGINAL",
            EquilibriumVerdict::Unstable => "UNSTABLE",
        }
    }
}

/// Linearized stability of an equilibrium.
#[derive(Debug, Clone)]
pub struct NonlinearStability {
    /// Sector parameter: the common order for a commensurate system,
    /// `1/m` otherwise.
    pub gamma: RationalOrder,
    /// Roots classified against `gamma * pi/2`: characteristic-polynomial
    /// roots for incommensurate orders, Jacobian eigenvalues otherwise.
    pub roots: Vec<Complex64>,
    pub abs_args: Vec<f64>,
    pub verdict: EquilibriumVerdict,
    /// The characteristic polynomial when the incommensurate path ran.
    pub char_poly: Option<IncommensurateCharPoly>,
}

fn classify_against(roots: &[Complex64], threshold: f64) -> (Vec<f64>, EquilibriumVerdict) {
    let abs_args: Vec<f64> = roots.iter().map(|r| r.arg().abs()).collect();
    let mut verdict = EquilibriumVerdict::Stable;
    for &arg in &abs_args {
        if (arg - threshold).abs() <= ARG_TOLERANCE {
            if verdict == EquilibriumVerdict::Stable {
                verdict = EquilibriumVerdict::Marginal;
            }
        } else if arg < threshold {
            verdict = EquilibriumVerdict::Unstable;
        }
    }
    (abs_args, verdict)
}

/// Stability of the zero solution of `D^q x = J x`: commensurate orders use
/// the Jacobian eigenvalues against `q pi/2`; incommensurate orders use all
/// roots of the characteristic determinant against `pi/(2m)`. Roots exactly
/// on the boundary are marginal, never stable.
pub fn nonlinear_stability(j: &DMatrix<f64>, q: &[RationalOrder]) -> Result<NonlinearStability> {
    if q.is_empty() {
        return Err(Error::InvalidInput("no derivative orders given".into()));
    }
    let commensurate = q.iter().all(|qi| qi == &q[0]);
    if commensurate {
        let gamma = q[0];
        let roots = linalg::eigenvalues(j)?;
        let (abs_args, verdict) = classify_against(&roots, gamma.as_f64() * PI / 2.0);
        Ok(NonlinearStability { gamma, roots, abs_args, verdict, char_poly: None })
    } else {
        let cp = char_poly_incommensurate(j, q)?;
        let roots = find_all_roots(&cp.poly.coeffs)?;
        let gamma = cp.gamma;
        let (abs_args, verdict) = classify_against(&roots, gamma.as_f64() * PI / 2.0);
        Ok(NonlinearStability { gamma, roots, abs_args, verdict, char_poly: Some(cp) })
    }
}

/// Minimum commensurate order for which the linearization can sustain
/// chaos: `max (2/pi) atan(|Im| / Re)` over eigenvalues with positive real
/// part. Errors when no eigenvalue is unstable.
pub fn min_chaos_order(j: &DMatrix<f64>) -> Result<f64> {
    let eig = linalg::eigenvalues(j)?;
    let mut best: Option<f64> = None;
    for l in eig {
        if l.re > 0.0 {
            let q = (2.0 / PI) * (l.im.abs() / l.re).atan();
            best = Some(best.map_or(q, |b: f64| b.max(q)));
        }
    }
    best.ok_or_else(|| {
        Error::Domain("chaos order bound needs at least one eigenvalue in the unstable region".into())
    })
}

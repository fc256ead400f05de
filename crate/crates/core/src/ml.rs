//! Two-parameter Mittag-Leffler function, its k-th derivative and the
//! `t^(mu k + nu - 1) E^(k)_{mu,nu}(y t^mu)` building block of analytic
//! fractional-order responses.
//!
//! Evaluation is by the defining series only, with compensated summation,
//! a three-consecutive-small-terms stopping rule and a cancellation guard.
//! Arguments beyond `Z_MAX` are refused instead of silently losing digits;
//! asymptotic expansions are deliberately not implemented.

use crate::error::{Error, Result};
use crate::gamma::{is_gamma_pole, ln_gamma_signed};
use num_complex::Complex64;

/// Largest `|z|` accepted by the series evaluator.
pub const Z_MAX: f64 = 50.0;

/// Series term budget; exceeding it is a non-convergence error.
pub const MAX_TERMS: usize = 10_000;

/// Cancellation guard: evaluation fails when the largest intermediate term
/// exceeds this multiple of `|result| + 1`.
pub const CANCELLATION_CAP: f64 = 1e12;

const REL_STOP: f64 = 1e-16;

/// Validated parameter pair for `E_{mu,nu}`; both must be positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    mu: f64,
    nu: f64,
}

impl MLParams {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::Domain(format!("Mittag-Leffler parameter mu must be positive, got {mu}")));
        }
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(Error::Domain(format!("Mittag-Leffler parameter nu must be positive, got {nu}")));
        }
        Ok(Self { mu, nu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
}

/// Series value plus the diagnostics needed to judge its accuracy.
#[derive(Debug, Clone, Copy)]
pub struct SeriesEval {
    pub value: Complex64,
    /// Number of series terms consumed.
    pub terms: usize,
    /// Largest intermediate term magnitude over `|value| + 1`; the f64
    /// rounding error of the sum scales with this ratio.
    pub cancellation: f64,
    /// Terms skipped because their gamma argument was a non-positive
    /// integer (reciprocal-gamma extension: those terms are exactly zero).
    pub gamma_pole_terms: usize,
}

/// Core series: `sum_i (i+k)!/i! * z^i / Gamma(mu i + mu k + nu)`.
///
/// `nu` may be any real here; non-positive-integer gamma arguments are
/// handled by the reciprocal-gamma extension (term = 0) and counted.
/// Magnitudes are accumulated in log space so that large rising factorials
/// and gamma values never overflow individually.
fn ml_deriv_series(mu: f64, nu: f64, k: usize, z: Complex64) -> Result<SeriesEval> {
    let z_abs = z.norm();
    if z_abs > Z_MAX {
        return Err(Error::Domain(format!(
            "|z| = {z_abs:.3} exceeds the series evaluation domain |z| <= {Z_MAX}"
        )));
    }

    let (ln_k_fact, _) = ln_gamma_signed(k as f64 + 1.0);
    if z_abs == 0.0 {
        let g = mu * k as f64 + nu;
        let (value, poles) = if is_gamma_pole(g) {
            (Complex64::new(0.0, 0.0), 1)
        } else {
            let (lg, sign) = ln_gamma_signed(g);
            (Complex64::new(sign * (ln_k_fact - lg).exp(), 0.0), 0)
        };
        return Ok(SeriesEval { value, terms: 1, cancellation: 0.0, gamma_pole_terms: poles });
    }

    let ln_z = z_abs.ln();
    let theta = z.arg();
    // purely real arguments keep an exactly real, sign-alternating series
    let real_axis = z.im == 0.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0); // Kahan compensation
    let mut max_term = 0.0f64;
    let mut small_streak = 0usize;
    let mut pole_terms = 0usize;

    for i in 0..MAX_TERMS {
        let idx = i as f64;
        let g_arg = mu * idx + mu * k as f64 + nu;
        let term = if is_gamma_pole(g_arg) {
            pole_terms += 1;
            Complex64::new(0.0, 0.0)
        } else {
            // ln |term| = ln((i+k)!/i!) + i ln|z| - ln|Gamma(g_arg)|
            let (ln_rising, _) = ln_gamma_signed(idx + k as f64 + 1.0);
            let (ln_i_fact, _) = ln_gamma_signed(idx + 1.0);
            let (lg, sign) = ln_gamma_signed(g_arg);
            let ln_mag = ln_rising - ln_i_fact + idx * ln_z - lg;
            if ln_mag > 709.0 {
                return Err(Error::LossOfPrecision(format!(
                    "series term overflows f64 at i={i} (mu={mu}, nu={nu}, |z|={z_abs:.3})"
                )));
            }
            let mag = sign * ln_mag.exp();
            if real_axis {
                let alternate = z.re < 0.0 && i % 2 == 1;
                Complex64::new(if alternate { -mag } else { mag }, 0.0)
            } else {
                let phase = idx * theta;
                Complex64::new(mag * phase.cos(), mag * phase.sin())
            }
        };

        let t_norm = term.norm();
        max_term = max_term.max(t_norm);

        // compensated summation
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;

        if t_norm <= REL_STOP * sum.norm() + 1e-300 {
            small_streak += 1;
            if small_streak >= 3 && i >= 3 {
                let cancellation = max_term / (sum.norm() + 1.0);
                if cancellation > CANCELLATION_CAP {
                    return Err(Error::LossOfPrecision(format!(
                        "cancellation ratio {cancellation:.3e} exceeds {CANCELLATION_CAP:.0e} \
                         (mu={mu}, nu={nu}, |z|={z_abs:.3})"
                    )));
                }
                return Ok(SeriesEval {
                    value: sum,
                    terms: i + 1,
                    cancellation,
                    gamma_pole_terms: pole_terms,
                });
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NonConvergence(format!(
        "Mittag-Leffler series needs more than {MAX_TERMS} terms (mu={mu}, nu={nu}, |z|={z_abs:.3})"
    )))
}

/// `E_{mu,nu}(z)` by truncated series.
pub fn ml(params: MLParams, z: Complex64) -> Result<Complex64> {
    Ok(ml_deriv_series(params.mu, params.nu, 0, z)?.value)
}

/// `E_{mu,nu}(z)` with accuracy diagnostics.
pub fn ml_eval(params: MLParams, z: Complex64) -> Result<SeriesEval> {
    ml_deriv_series(params.mu, params.nu, 0, z)
}

/// k-th derivative `E^(k)_{mu,nu}(z)`; `k = 0` is exactly `ml` (same code path).
pub fn ml_deriv(params: MLParams, k: usize, z: Complex64) -> Result<Complex64> {
    if k > 256 {
        return Err(Error::Domain(format!("derivative order k = {k} exceeds 256")));
    }
    Ok(ml_deriv_series(params.mu, params.nu, k, z)?.value)
}

/// Result of a `podlubny_ek` evaluation with its diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct EkEval {
    pub value: f64,
    pub terms: usize,
    pub cancellation: f64,
    pub gamma_pole_terms: usize,
}

/// `E_k(t, y; mu, nu) = t^(mu k + nu - 1) * E^(k)_{mu,nu}(y t^mu)`,
/// with diagnostics.
///
/// `nu` may be any real: it only shifts the power prefactor and the gamma
/// arguments inside the series. Inner terms whose gamma argument hits a
/// pole vanish under the reciprocal-gamma extension and are counted in
/// `gamma_pole_terms`.
pub fn podlubny_ek_eval(k: usize, t: f64, y: f64, mu: f64, nu: f64) -> Result<EkEval> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("podlubny_ek requires t > 0, got {t}")));
    }
    if !(mu > 0.0) {
        return Err(Error::Domain(format!("podlubny_ek requires mu > 0, got {mu}")));
    }
    if k > 256 {
        return Err(Error::Domain(format!("derivative order k = {k} exceeds 256")));
    }
    let z = Complex64::new(y * t.powf(mu), 0.0);
    let inner = ml_deriv_series(mu, nu, k, z)?;
    let prefactor = t.powf(mu * k as f64 + nu - 1.0);
    Ok(EkEval {
        value: prefactor * inner.value.re,
        terms: inner.terms,
        cancellation: inner.cancellation,
        gamma_pole_terms: inner.gamma_pole_terms,
    })
}

/// `E_k(t, y; mu, nu)` as a plain value.
pub fn podlubny_ek(k: usize, t: f64, y: f64, mu: f64, nu: f64) -> Result<f64> {
    Ok(podlubny_ek_eval(k, t, y, mu, nu)?.value)
}

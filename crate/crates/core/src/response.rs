//! Closed-form time responses of fractional-order LTI systems through
//! Mittag-Leffler series.
//!
//! The impulse response of `1 / (a_n s^a_n + ... + a_0 s^a_0)` is the double
//! series over an outer index and the compositions of that index across the
//! low-order terms; each term is a Podlubny `E_k` evaluation with
//! `mu = alpha_n - alpha_(n-1)` and second argument `-a_(n-1)/a_n`. The step
//! response only shifts the `nu` parameter by one.
//!
//! Partial-fraction (modal) responses use the standard inverse-transform
//! convention `1/(s^a + lambda)  ->  t^(a-1) E_{a,a}(-lambda t^a)`, i.e.
//! `E_0(t, -lambda; a, a)`; some texts print the prefactor as `t^a` instead,
//! and `commensurate_response` documents and tests which one is implemented.

use crate::error::{Error, Result};
use crate::lti::ModalTerm;
use crate::ml::{ml_eval, podlubny_ek_eval, MLParams};
use crate::orders::PseudoPolynomial;
use num_complex::Complex64;

/// Truncation control for the response series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesBudget {
    /// Cap on the outer series index.
    pub max_outer: usize,
    /// Relative tolerance deciding when the outer series has converged.
    pub rel_tol: f64,
    /// Largest tolerated ratio of the biggest intermediate term to the
    /// result magnitude before a point is flagged unconverged.
    pub cancellation_cap: f64,
}

impl Default for SeriesBudget {
    fn default() -> Self {
        Self { max_outer: 60, rel_tol: 1e-10, cancellation_cap: 1e12 }
    }
}

impl SeriesBudget {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::InvalidInput(format!(
                "rel_tol = {} outside (0, 1)",
                self.rel_tol
            )));
        }
        if self.cancellation_cap < 1.0 {
            return Err(Error::InvalidInput(format!(
                "cancellation_cap = {} must be >= 1",
                self.cancellation_cap
            )));
        }
        if self.max_outer == 0 {
            return Err(Error::InvalidInput("max_outer must be >= 1".into()));
        }
        Ok(())
    }
}

/// Which response the series evaluates. `ZeroInput` is the homogeneous
/// reading of the same kernel as `Impulse` (identical `nu`); `Step`
/// integrates once, shifting `nu` by +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseVariant {
    Impulse,
    Step,
    ZeroInput,
}

impl ResponseVariant {
    fn nu_shift(&self) -> f64 {
        match self {
            ResponseVariant::Impulse | ResponseVariant::ZeroInput => 0.0,
            ResponseVariant::Step => 1.0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ResponseVariant::Impulse => "impulse",
            ResponseVariant::Step => "step",
            ResponseVariant::ZeroInput => "zero",
        }
    }
}

/// One evaluated time point.
#[derive(Debug, Clone, Copy)]
pub struct ResponsePoint {
    pub t: f64,
    pub value: f64,
    /// False when the series was truncated by budget, refused by the
    /// evaluation domain, or dominated by cancellation.
    pub converged: bool,
    /// Series terms skipped at gamma poles (reciprocal-gamma extension).
    pub gamma_pole_terms: usize,
}

/// Iterates the compositions of `total` into `len` nonnegative parts in
/// lexicographic order. With `len = 0` only `total = 0` yields the empty
/// composition.
struct Compositions {
    current: Option<Vec<usize>>,
}

impl Compositions {
    fn new(total: usize, len: usize) -> Self {
        if len == 0 {
            return Self { current: if total == 0 { Some(Vec::new()) } else { None } };
        }
        let mut first = vec![0; len];
        first[0] = total;
        Self { current: Some(first) }
    }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.current.take()?;
        if !current.is_empty() {
            // standard successor: move one unit from the rightmost positive
            // entry (except the last) to its right neighbour, folding the
            // tail back onto it
            let len = current.len();
            let mut next = current.clone();
            let mut pivot = None;
            for i in (0..len - 1).rev() {
                if next[i] > 0 {
                    pivot = Some(i);
                    break;
                }
            }
            if let Some(i) = pivot {
                next[i] -= 1;
                let tail: usize = next[i + 1..].iter().sum();
                for v in &mut next[i + 1..] {
                    *v = 0;
                }
                next[i + 1] = tail + 1;
                self.current = Some(next);
            }
        }
        Some(current)
    }
}

struct SeriesTermScan {
    sum: f64,
    max_term: f64,
    pole_terms: usize,
    failed: bool,
}

impl SeriesTermScan {
    fn new() -> Self {
        Self { sum: 0.0, max_term: 0.0, pole_terms: 0, failed: false }
    }
}

/// Evaluates the impulse/step/homogeneous response of an n-term
/// characteristic polynomial on a positive time grid.
pub fn general_fode_response(
    den: &PseudoPolynomial,
    variant: ResponseVariant,
    t_grid: &[f64],
    budget: &SeriesBudget,
) -> Result<Vec<ResponsePoint>> {
    budget.validate()?;
    if den.len() < 2 {
        return Err(Error::InvalidInput(
            "response series needs at least two terms in the characteristic polynomial".into(),
        ));
    }
    if den.has_negative_order() {
        return Err(Error::Domain("response series needs nonnegative orders".into()));
    }
    for &t in t_grid {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("response series needs t > 0, got {t}")));
        }
    }

    // ascending: a[0] s^alpha[0] + ... + a[n] s^alpha[n]
    let mut terms: Vec<(f64, f64)> =
        den.terms().iter().map(|(c, q)| (*c, q.as_f64())).collect();
    terms.reverse();
    let n = terms.len() - 1;
    let (a_n, alpha_n) = terms[n];
    let (a_n1, alpha_n1) = terms[n - 1];
    let mu = alpha_n - alpha_n1;
    let y = -a_n1 / a_n;
    let low_count = n.saturating_sub(1); // composition indices over a[0..n-2]

    let points = t_grid
        .iter()
        .map(|&t| {
            let mut scan = SeriesTermScan::new();
            let mut small_streak = 0usize;
            let mut converged = false;
            for level in 0..=budget.max_outer {
                if scan.failed {
                    break;
                }
                let mut level_contribution = 0.0f64;
                for comp in Compositions::new(level, low_count) {
                    // (-1)^level / prod k_j! * prod (a_j/a_n)^(k_j)
                    let mut coeff = if level % 2 == 0 { 1.0 } else { -1.0 };
                    let mut nu = alpha_n + variant.nu_shift();
                    for (j, &k_j) in comp.iter().enumerate() {
                        let ratio = terms[j].0 / a_n;
                        coeff *= ratio.powi(k_j as i32);
                        for f in 1..=k_j {
                            coeff /= f as f64;
                        }
                        nu += (alpha_n1 - terms[j].1) * k_j as f64;
                    }
                    if coeff == 0.0 || coeff.abs() < 1e-300 {
                        continue;
                    }
                    match podlubny_ek_eval(level, t, y, mu, nu) {
                        Ok(ek) => {
                            let term = coeff * ek.value;
                            scan.pole_terms += ek.gamma_pole_terms;
                            scan.max_term = scan.max_term.max(term.abs());
                            scan.sum += term;
                            level_contribution += term.abs();
                        }
                        Err(Error::Domain(_))
                        | Err(Error::LossOfPrecision(_))
                        | Err(Error::NonConvergence(_)) => {
                            scan.failed = true;
                            break;
                        }
                        Err(e) => return Err(e),
                    }
                }
                if scan.failed {
                    break;
                }
                if level_contribution <= budget.rel_tol * (scan.sum.abs() + 1e-300) {
                    small_streak += 1;
                    if small_streak >= 2 {
                        converged = true;
                        break;
                    }
                } else {
                    small_streak = 0;
                }
            }
            let cancellation = scan.max_term / (scan.sum.abs() + 1.0);
            if cancellation > budget.cancellation_cap {
                converged = false;
            }
            Ok(ResponsePoint {
                t,
                value: scan.sum / a_n,
                converged: converged && !scan.failed,
                gamma_pole_terms: scan.pole_terms,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(points)
}

/// Specialized single-sum evaluation for a 3-term polynomial
/// `a_2 s^alpha_2 + a_1 s^alpha_1 + a_0` (constant term required). Used to
/// cross-validate the general path; the two agree to roundoff.
pub fn fode3_response(
    den: &PseudoPolynomial,
    variant: ResponseVariant,
    t_grid: &[f64],
    budget: &SeriesBudget,
) -> Result<Vec<ResponsePoint>> {
    budget.validate()?;
    if den.len() != 3 {
        return Err(Error::InvalidInput("fode3_response needs exactly three terms".into()));
    }
    let terms = den.terms(); // descending
    let (a2, alpha2) = (terms[0].0, terms[0].1.as_f64());
    let (a1, alpha1) = (terms[1].0, terms[1].1.as_f64());
    let (a0, alpha0) = (terms[2].0, terms[2].1.as_f64());
    if alpha0 != 0.0 {
        return Err(Error::InvalidInput("fode3_response needs a constant term".into()));
    }
    if !(alpha2 > alpha1 && alpha1 > 0.0) {
        return Err(Error::InvalidInput("fode3_response needs alpha_2 > alpha_1 > 0".into()));
    }
    for &t in t_grid {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("response series needs t > 0, got {t}")));
        }
    }

    let mu = alpha2 - alpha1;
    let y = -a1 / a2;
    let ratio = a0 / a2;
    let points = t_grid
        .iter()
        .map(|&t| {
            let mut scan = SeriesTermScan::new();
            let mut small_streak = 0usize;
            let mut converged = false;
            let mut coeff = 1.0; // (-1)^k (a0/a2)^k / k!
            for k in 0..=budget.max_outer {
                if k > 0 {
                    coeff *= -ratio / k as f64;
                }
                let nu = alpha2 + alpha1 * k as f64 + variant.nu_shift();
                let term = match podlubny_ek_eval(k, t, y, mu, nu) {
                    Ok(ek) => {
                        scan.pole_terms += ek.gamma_pole_terms;
                        coeff * ek.value
                    }
                    Err(Error::Domain(_))
                    | Err(Error::LossOfPrecision(_))
                    | Err(Error::NonConvergence(_)) => {
                        scan.failed = true;
                        break;
                    }
                    Err(e) => return Err(e),
                };
                scan.max_term = scan.max_term.max(term.abs());
                scan.sum += term;
                if term.abs() <= budget.rel_tol * (scan.sum.abs() + 1e-300) {
                    small_streak += 1;
                    if small_streak >= 2 {
                        converged = true;
                        break;
                    }
                } else {
                    small_streak = 0;
                }
            }
            let cancellation = scan.max_term / (scan.sum.abs() + 1.0);
            if cancellation > budget.cancellation_cap {
                converged = false;
            }
            Ok(ResponsePoint {
                t,
                value: scan.sum / a2,
                converged: converged && !scan.failed,
                gamma_pole_terms: scan.pole_terms,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(points)
}

/// Impulse response of `(b_1 s^alpha_1 + b_0) / (a_2 s^alpha_2 + a_1
/// s^alpha_1 + a_0)`: two interleaved `E_k` series, one expanded around the
/// middle denominator term, one around the constant term. The numerator
/// `s` power must equal the middle denominator power `alpha_1`.
#[derive(Debug, Clone, Copy)]
pub struct ClosedLoop2x3 {
    pub b1: f64,
    pub b0: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
    pub alpha2: f64,
    pub alpha1: f64,
}

impl ClosedLoop2x3 {
    pub fn new(b1: f64, b0: f64, a2: f64, a1: f64, a0: f64, alpha2: f64, alpha1: f64) -> Result<Self> {
        if a2 == 0.0 {
            return Err(Error::InvalidInput("leading denominator coefficient is zero".into()));
        }
        if !(alpha2 > alpha1 && alpha1 > 0.0) {
            return Err(Error::InvalidInput("closed loop needs alpha_2 > alpha_1 > 0".into()));
        }
        Ok(Self { b1, b0, a2, a1, a0, alpha2, alpha1 })
    }

    /// Evaluates the impulse response on a positive time grid.
    pub fn response(&self, t_grid: &[f64], budget: &SeriesBudget) -> Result<Vec<ResponsePoint>> {
        budget.validate()?;
        for &t in t_grid {
            if !(t > 0.0) {
                return Err(Error::Domain(format!("response series needs t > 0, got {t}")));
            }
        }
        let points = t_grid
            .iter()
            .map(|&t| {
                let mut scan = SeriesTermScan::new();
                let mut converged_parts = 0;

                // first sum: expansion around the middle term; nu walks down
                // and may cross gamma poles, handled inside the series
                let s1 = self.partial_sum(t, budget, &mut scan, |k| {
                    (
                        self.a1 / self.a2,
                        -self.a0 / self.a2,
                        self.alpha2,
                        self.alpha2 - self.alpha1 * (k as f64 + 1.0),
                    )
                });
                if s1 {
                    converged_parts += 1;
                }
                let first = scan.sum * (self.b1 / self.a2);
                scan.sum = 0.0;

                // second sum: expansion around the constant term
                let s2 = self.partial_sum(t, budget, &mut scan, |k| {
                    (
                        self.a0 / self.a2,
                        -self.a1 / self.a2,
                        self.alpha2 - self.alpha1,
                        self.alpha2 + self.alpha1 * k as f64,
                    )
                });
                if s2 {
                    converged_parts += 1;
                }
                let second = scan.sum * (self.b0 / self.a2);

                let value = first + second;
                let cancellation = scan.max_term / (value.abs() + 1.0);
                Ok(ResponsePoint {
                    t,
                    value,
                    converged: converged_parts == 2
                        && !scan.failed
                        && cancellation <= budget.cancellation_cap,
                    gamma_pole_terms: scan.pole_terms,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(points)
    }

    /// Accumulates `sum_k (-1)^k/k! ratio^k E_k(t, y; mu, nu_k)` into
    /// `scan.sum`; the closure maps `k` to `(ratio, y, mu, nu_k)`.
    fn partial_sum<F>(
        &self,
        t: f64,
        budget: &SeriesBudget,
        scan: &mut SeriesTermScan,
        params: F,
    ) -> bool
    where
        F: Fn(usize) -> (f64, f64, f64, f64),
    {
        let mut small_streak = 0usize;
        let mut coeff = 1.0;
        for k in 0..=budget.max_outer {
            let (ratio, y, mu, nu) = params(k);
            if k > 0 {
                coeff *= -ratio / k as f64;
            }
            let term = match podlubny_ek_eval(k, t, y, mu, nu) {
                Ok(ek) => {
                    scan.pole_terms += ek.gamma_pole_terms;
                    coeff * ek.value
                }
                Err(Error::Domain(_))
                | Err(Error::LossOfPrecision(_))
                | Err(Error::NonConvergence(_)) => {
                    scan.failed = true;
                    return false;
                }
                Err(_) => {
                    scan.failed = true;
                    return false;
                }
            };
            scan.max_term = scan.max_term.max(term.abs());
            scan.sum += term;
            if term.abs() <= budget.rel_tol * (scan.sum.abs() + 1e-300) {
                small_streak += 1;
                if small_streak >= 2 {
                    return true;
                }
            } else {
                small_streak = 0;
            }
        }
        false
    }
}

/// Sum of simple-pole modal responses sharing one order `a`:
/// `K_0 sum_i A_i t^(a-1) E_{a,a}(-lambda_i t^a)`.
///
/// Uses the inverse-transform power `t^(a-1)` (the `E_0` identity), not the
/// `t^a` prefactor some sources print; the two agree at t = 1.
pub fn commensurate_response(
    modal: &[ModalTerm],
    k0: f64,
    t_grid: &[f64],
) -> Result<Vec<f64>> {
    if modal.is_empty() {
        return Ok(vec![0.0; t_grid.len()]);
    }
    let alpha = modal[0].q;
    for term in modal {
        if term.k != 1 {
            return Err(Error::Unsupported(
                "commensurate_response handles simple poles only (k = 1)".into(),
            ));
        }
        if term.q != alpha {
            return Err(Error::InvalidInput(
                "commensurate_response needs all terms to share one order".into(),
            ));
        }
    }
    let params = MLParams::new(alpha, alpha)?;
    t_grid
        .iter()
        .map(|&t| {
            if !(t > 0.0) {
                return Err(Error::Domain(format!("response series needs t > 0, got {t}")));
            }
            let mut acc = Complex64::new(0.0, 0.0);
            let t_a = t.powf(alpha);
            let pre = t.powf(alpha - 1.0);
            for term in modal {
                let e = ml_eval(params, -term.lambda * t_a)?;
                acc += term.coeff * pre * e.value;
            }
            Ok(k0 * acc.re)
        })
        .collect()
}

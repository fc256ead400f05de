//! Stability analysis of fractional-order LTI systems on the w-plane.
//!
//! The characteristic pseudo-polynomial is lifted with `w = s^(1/m)` (`m`
//! the LCM of the order denominators), all w-plane roots are found, and
//! each root is classified by its argument:
//!
//! * `|arg w| <  pi/2m`          unstable (maps into the closed right half
//!   plane of the first Riemann sheet)
//! * `|arg w| =  pi/2m`          oscillatory boundary
//! * `pi/2m < |arg w| < pi/m`    stable
//! * `|arg w| >= pi/m`           not physical (outside the first sheet)
//!
//! Roots on the first sheet map back to s-plane poles via `s = w^m`, with
//! `|arg s| = m |arg w|`.

use crate::error::{Error, Result};
use crate::linalg;
use crate::orders::{to_w_polynomial, PseudoPolynomial, RationalOrder, WPolynomial};
use crate::parse::TransferFunction;
use crate::roots;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Tolerance (radians) for comparing a root argument to a sector edge.
pub const ARG_TOLERANCE: f64 = 1e-9;

/// Magnitude below which a w-plane root counts as a root at the origin.
pub const ZERO_ROOT_TOLERANCE: f64 = 1e-12;

/// Sector of the w-plane a classified root falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    Unstable,
    Oscillatory,
    Stable,
    NonPhysical,
}

impl Sector {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sector::Unstable => "UNSTABLE",
            Sector::Oscillatory => "OSCILLATORY",
            Sector::Stable => "STABLE",
            Sector::NonPhysical => "NONPHYSICAL",
        }
    }
}

/// Overall verdict of a stability analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    Oscillatory,
    Unstable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Stable => "STABLE",
            Verdict::Oscillatory => "OSCILLATORY",
            Verdict::Unstable => "UNSTABLE",
        }
    }
}

/// A w-plane root with its argument, sector, and (when it lies on the
/// first Riemann sheet) the corresponding s-plane pole `w^m`.
#[derive(Debug, Clone, Copy)]
pub struct ClassifiedRoot {
    pub w: Complex64,
    pub abs_arg: f64,
    pub sector: Sector,
    pub s_pole: Option<Complex64>,
}

/// Full result of analyzing a characteristic pseudo-polynomial.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub m: i64,
    pub fdeg: usize,
    pub roots: Vec<ClassifiedRoot>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// All w-plane roots of the lifted polynomial, sorted by descending real
/// part then descending imaginary part.
pub fn find_roots(p: &WPolynomial) -> Result<Vec<Complex64>> {
    if p.degree() == 0 {
        return Err(Error::InvalidInput("constant polynomial has no roots".into()));
    }
    roots::find_all_roots(&p.coeffs).map_err(|e| match e {
        Error::Numeric(msg) => Error::Numeric(format!("degree-{} lift: {msg}", p.degree())),
        other => other,
    })
}

/// Classifies w-plane roots against the sector edges `pi/2m` and `pi/m`.
/// A root at the origin is unstable (a singularity at s = 0).
pub fn classify_roots(ws: &[Complex64], m: i64) -> Vec<ClassifiedRoot> {
    let m_f = m as f64;
    let oscillation_edge = PI / (2.0 * m_f);
    let physical_edge = PI / m_f;
    ws.iter()
        .map(|&w| {
            let abs_arg = w.arg().abs();
            let sector = if w.norm() <= ZERO_ROOT_TOLERANCE {
                Sector::Unstable
            } else if (abs_arg - oscillation_edge).abs() <= ARG_TOLERANCE {
                Sector::Oscillatory
            } else if abs_arg < oscillation_edge {
                Sector::Unstable
            } else if abs_arg < physical_edge - ARG_TOLERANCE {
                Sector::Stable
            } else {
                Sector::NonPhysical
            };
            let s_pole = if sector != Sector::NonPhysical {
                // polar power keeps |arg s| = m |arg w| exact
                Some(Complex64::from_polar(w.norm().powi(m as i32), m_f * w.arg()))
            } else {
                None
            };
            ClassifiedRoot { w, abs_arg, sector, s_pole }
        })
        .collect()
}

fn verdict_of(roots: &[ClassifiedRoot]) -> Verdict {
    if roots.iter().any(|r| r.sector == Sector::Unstable) {
        Verdict::Unstable
    } else if roots.iter().any(|r| r.sector == Sector::Oscillatory) {
        Verdict::Oscillatory
    } else {
        Verdict::Stable
    }
}

/// Analyzes a characteristic pseudo-polynomial: lift, root finding, sector
/// classification, verdict.
pub fn analyze_characteristic(den: &PseudoPolynomial) -> Result<StabilityReport> {
    if den.is_empty() {
        return Err(Error::InvalidInput("empty characteristic polynomial".into()));
    }
    let lifted = to_w_polynomial(den)?;
    let m = lifted.m;
    let fdeg = lifted.degree();
    if fdeg == 0 {
        return Err(Error::InvalidInput(
            "characteristic polynomial is a nonzero constant; no roots to analyze".into(),
        ));
    }
    let ws = find_roots(&lifted)?;
    let classified = classify_roots(&ws, m);
    let mut notes = Vec::new();
    for (w, count) in roots::root_clusters(&ws) {
        notes.push(format!(
            "root cluster near {:.6}{:+.6}j of size {count}; treated as a multiple root",
            w.re, w.im
        ));
    }
    if classified.iter().any(|r| r.w.norm() <= ZERO_ROOT_TOLERANCE) {
        notes.push("root at w = 0 (singularity at s = 0): the system cannot be stable".into());
    }
    if classified.iter().all(|r| r.sector == Sector::NonPhysical) {
        notes.push("no roots on the physical sheet; the system is always stable".into());
    }
    let verdict = verdict_of(&classified);
    Ok(StabilityReport { m, fdeg, roots: classified, verdict, notes })
}

/// Analyzes a transfer function. The verdict is decided by the denominator
/// only; numerator roots that coincide with denominator roots are noted,
/// never cancelled.
pub fn analyze(tf: &TransferFunction) -> Result<StabilityReport> {
    let mut report = analyze_characteristic(tf.denominator())?;
    if let Ok(num_lift) = to_w_polynomial(tf.numerator()) {
        if num_lift.degree() >= 1 {
            // coincidence check only makes sense on a common sheet count
            if num_lift.m == report.m {
                if let Ok(num_roots) = find_roots(&num_lift) {
                    for nr in num_roots {
                        if report.roots.iter().any(|r| (r.w - nr).norm() < 1e-8) {
                            report.notes.push(format!(
                                "numerator root {:.6}{:+.6}j coincides with a denominator root; \
                                 no pole-zero cancellation is performed",
                                nr.re, nr.im
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Sector test for the eigenvalues of a real matrix: returns true iff all
/// eigenvalues of `[[A cos d, -A sin d], [A sin d, A cos d]]` have negative
/// real part, which holds exactly when every eigenvalue of `A` satisfies
/// `|arg(lambda)| > pi/2 + d`.
pub fn matrix_sector_test(a: &DMatrix<f64>, delta: f64) -> Result<bool> {
    if a.nrows() != a.ncols() {
        return Err(Error::InvalidInput("matrix_sector_test needs a square matrix".into()));
    }
    if !(delta > 0.0 && delta <= PI / 2.0) {
        return Err(Error::Domain(format!("delta = {delta} outside (0, pi/2]")));
    }
    let n = a.nrows();
    let (c, s) = (delta.cos(), delta.sin());
    let mut big = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let v = a[(i, j)];
            big[(i, j)] = v * c;
            big[(i, j + n)] = -v * s;
            big[(i + n, j)] = v * s;
            big[(i + n, j + n)] = v * c;
        }
    }
    let eig = linalg::eigenvalues(&big)?;
    Ok(eig.iter().all(|l| l.re < 0.0))
}

/// Report of the commensurate-order eigenvalue test `|arg(eig(A))| > q pi/2`.
#[derive(Debug, Clone)]
pub struct CommensurateEigReport {
    pub eigenvalues: Vec<Complex64>,
    pub abs_args: Vec<f64>,
    pub stable: bool,
    pub notes: Vec<String>,
}

/// Commensurate-order stability test on the state matrix.
pub fn commensurate_eig_test(a: &DMatrix<f64>, q: f64) -> Result<CommensurateEigReport> {
    if !(q > 0.0 && q < 2.0) {
        return Err(Error::Domain(format!("commensurate order q = {q} outside (0, 2)")));
    }
    let eigenvalues = linalg::eigenvalues(a)?;
    let abs_args: Vec<f64> = eigenvalues.iter().map(|l| l.arg().abs()).collect();
    let edge = q * PI / 2.0;
    let mut notes = Vec::new();
    let mut stable = true;
    for (l, &arg) in eigenvalues.iter().zip(&abs_args) {
        if (arg - edge).abs() <= ARG_TOLERANCE {
            notes.push(format!(
                "eigenvalue {:.6}{:+.6}j lies on the sector boundary |arg| = q pi/2: OSCILLATORY",
                l.re, l.im
            ));
            stable = false;
        } else if arg < edge {
            stable = false;
        }
    }
    Ok(CommensurateEigReport { eigenvalues, abs_args, stable, notes })
}

/// One modal term `A / (s^q + lambda)^k` of a modal decomposition.
#[derive(Debug, Clone, Copy)]
pub struct ModalTerm {
    pub q: f64,
    pub lambda: Complex64,
    pub k: usize,
    pub coeff: Complex64,
}

impl ModalTerm {
    pub fn new(q: f64, lambda: Complex64, k: usize, coeff: Complex64) -> Result<Self> {
        if !(q > 0.0 && q < 2.0) {
            return Err(Error::Domain(format!("modal term order q = {q} outside (0, 2)")));
        }
        if k == 0 {
            return Err(Error::Domain("modal term power k must be >= 1".into()));
        }
        Ok(Self { q, lambda, k, coeff })
    }
}

/// Per-term outcome of the modal BIBO test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModalVerdict {
    Stable,
    Marginal,
    Unstable,
}

/// Modal BIBO test: every term must satisfy `0 < q < 2` and
/// `|arg(lambda)| < pi (1 - q/2)`. Terms within `ARG_TOLERANCE` of the
/// boundary are marginal.
pub fn modal_verdict(terms: &[ModalTerm]) -> ModalVerdict {
    let mut verdict = ModalVerdict::Stable;
    for t in terms {
        let bound = PI * (1.0 - t.q / 2.0);
        let arg = t.lambda.arg().abs();
        if (arg - bound).abs() <= ARG_TOLERANCE {
            if verdict == ModalVerdict::Stable {
                verdict = ModalVerdict::Marginal;
            }
        } else if arg > bound {
            verdict = ModalVerdict::Unstable;
        }
    }
    verdict
}

/// True iff the modal decomposition is BIBO stable (strictly inside the
/// stability sector; boundary terms are not stable).
pub fn modal_stable(terms: &[ModalTerm]) -> bool {
    modal_verdict(terms) == ModalVerdict::Stable
}

/// Companion-form state space with one rational order per state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub c: DMatrix<f64>,
    pub q: Vec<RationalOrder>,
}

impl StateSpace {
    pub fn dim(&self) -> usize {
        self.a.nrows()
    }
}

/// Rewrites an n-term characteristic polynomial (with a constant term)
/// into companion form: states chained by the successive order
/// differences `q_1 = alpha_1, q_i = alpha_i - alpha_{i-1}`, last row
/// `-a_0/a_n ... -a_{n-1}/a_n`, input gain `1/a_n`, output `x_1`.
pub fn to_state_space(den: &PseudoPolynomial) -> Result<StateSpace> {
    if den.len() < 2 {
        return Err(Error::Unsupported(
            "state-space form needs at least two terms in the characteristic polynomial".into(),
        ));
    }
    // terms are stored descending; work in ascending order
    let mut terms: Vec<(f64, RationalOrder)> = den.terms().to_vec();
    terms.reverse();
    if !terms[0].1.is_zero() {
        return Err(Error::Unsupported(
            "state-space form needs a constant term (order 0) in the characteristic polynomial"
                .into(),
        ));
    }
    let n = terms.len() - 1;
    let a_n = terms[n].0;
    let mut q = Vec::with_capacity(n);
    for i in 1..=n {
        let diff = terms[i].1.checked_sub(&terms[i - 1].1)?;
        let v = diff.as_f64();
        if !(v > 0.0 && v < 2.0) {
            return Err(Error::Unsupported(format!(
                "state order q_{i} = {diff} falls outside (0, 2); companion form not applicable"
            )));
        }
        q.push(diff);
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        a[(i, i + 1)] = 1.0;
    }
    for j in 0..n {
        a[(n - 1, j)] = -terms[j].0 / a_n;
    }
    let mut b = DMatrix::<f64>::zeros(n, 1);
    b[(n - 1, 0)] = 1.0 / a_n;
    let mut c = DMatrix::<f64>::zeros(1, n);
    c[(0, 0)] = 1.0;
    Ok(StateSpace { a, b, c, q })
}

/// Kalman controllability: `[B | AB | ... | A^(n-1) B]` has full rank.
pub fn controllable(ss: &StateSpace) -> bool {
    let n = ss.dim();
    let mut cols = DMatrix::<f64>::zeros(n, n * ss.b.ncols());
    let mut block = ss.b.clone();
    for k in 0..n {
        cols.view_mut((0, k * ss.b.ncols()), (n, ss.b.ncols())).copy_from(&block);
        block = &ss.a * block;
    }
    linalg::rank(&cols) == n
}

/// Kalman observability: `[C; CA; ...; CA^(n-1)]` has full rank.
pub fn observable(ss: &StateSpace) -> bool {
    let n = ss.dim();
    let rows_per = ss.c.nrows();
    let mut rows = DMatrix::<f64>::zeros(n * rows_per, n);
    let mut block = ss.c.clone();
    for k in 0..n {
        rows.view_mut((k * rows_per, 0), (rows_per, n)).copy_from(&block);
        block = &block * &ss.a;
    }
    linalg::rank(&rows) == n
}

/// Value of `lim_{s -> 0+} s G(s)` by exact order bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FinalValue {
    Value(f64),
    /// The limit diverges.
    Indeterminate,
}

/// Limit of `s G(s)` as `s -> 0` along the positive real axis, by exact
/// comparison of the lowest orders of `s * numerator` and the denominator.
pub fn final_value(tf: &TransferFunction) -> Result<FinalValue> {
    let num = tf.numerator();
    if num.is_empty() {
        return Ok(FinalValue::Value(0.0));
    }
    let shifted = num.shift_order(&RationalOrder::ONE)?;
    let (num_c, num_q) = shifted.trailing().expect("nonempty numerator");
    let (den_c, den_q) = tf.denominator().trailing().expect("nonempty denominator");
    match num_q.cmp(&den_q) {
        std::cmp::Ordering::Greater => Ok(FinalValue::Value(0.0)),
        std::cmp::Ordering::Equal => Ok(FinalValue::Value(num_c / den_c)),
        std::cmp::Ordering::Less => Ok(FinalValue::Indeterminate),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_pseudo_polynomial, parse_transfer_function};

    #[test]
    fn classify_sector_edges() {
        let m = 10;
        let edge = PI / 20.0;
        let at = |arg: f64| Complex64::from_polar(1.0, arg);
        let roots = [
            at(0.0),
            at(edge),
            at(edge + 1e-3),
            at(PI / 10.0 - 1e-3),
            at(PI / 10.0),
            at(PI / 2.0),
        ];
        let classified = classify_roots(&roots, m);
        assert_eq!(classified[0].sector, Sector::Unstable);
        assert_eq!(classified[1].sector, Sector::Oscillatory);
        assert_eq!(classified[2].sector, Sector::Stable);
        assert_eq!(classified[3].sector, Sector::Stable);
        assert_eq!(classified[4].sector, Sector::NonPhysical);
        assert_eq!(classified[5].sector, Sector::NonPhysical);
        assert!(classified[2].s_pole.is_some());
        assert!(classified[4].s_pole.is_none());
    }

    #[test]
    fn zero_root_is_unstable() {
        let classified = classify_roots(&[Complex64::new(0.0, 0.0)], 2);
        assert_eq!(classified[0].sector, Sector::Unstable);
    }

    #[test]
    fn argument_scaling_to_s_plane() {
        let w = Complex64::from_polar(1.1, 0.25);
        let r = &classify_roots(&[w], 5)[0];
        let s = r.s_pole.unwrap();
        assert!((s.arg().abs() - 5.0 * r.abs_arg).abs() < 1e-12);
        assert!((s.norm() - 1.1f64.powi(5)).abs() < 1e-12);
    }

    #[test]
    fn classical_unstable_pole() {
        let tf = parse_transfer_function("1/(s-1)").unwrap();
        let report = analyze(&tf).unwrap();
        assert_eq!(report.m, 1);
        assert_eq!(report.fdeg, 1);
        assert_eq!(report.verdict, Verdict::Unstable);
        assert!((report.roots[0].w - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn integer_oscillator_is_oscillatory() {
        let tf = parse_transfer_function("1/(s^2+1)").unwrap();
        let report = analyze(&tf).unwrap();
        assert_eq!(report.verdict, Verdict::Oscillatory);
    }

    #[test]
    fn half_order_lag_has_no_physical_roots() {
        let report =
            analyze_characteristic(&parse_pseudo_polynomial("s^0.5+1").unwrap()).unwrap();
        assert_eq!(report.m, 2);
        assert_eq!(report.fdeg, 1);
        assert_eq!(report.verdict, Verdict::Stable);
        assert!(report.roots.iter().all(|r| r.sector == Sector::NonPhysical));
        assert!(report.notes.iter().any(|n| n.contains("always stable")));
    }

    #[test]
    fn singularity_at_origin_cannot_be_stable() {
        // s^1.5 + s^0.5 = s^0.5 (s + 1): lift has a root at w = 0
        let report =
            analyze_characteristic(&parse_pseudo_polynomial("s^1.5+s^0.5").unwrap()).unwrap();
        assert_eq!(report.verdict, Verdict::Unstable);
        assert!(report.notes.iter().any(|n| n.contains("w = 0")));
    }

    #[test]
    fn sector_test_examples() {
        let a = DMatrix::from_row_slice(1, 1, &[-1.0]);
        assert!(matrix_sector_test(&a, PI / 4.0).unwrap());
        let a = DMatrix::from_row_slice(1, 1, &[1.0]);
        assert!(!matrix_sector_test(&a, 0.3).unwrap());
        // companion matrix with |arg(eig)| = 1.8541: true below the edge
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.25, -0.625]);
        assert!(matrix_sector_test(&a, 1.8540 - PI / 2.0).unwrap());
        assert!(!matrix_sector_test(&a, 1.8542 - PI / 2.0).unwrap());
        assert!(matrix_sector_test(&a, 0.0).is_err());
    }

    #[test]
    fn commensurate_eig_examples() {
        let a = DMatrix::from_row_slice(1, 1, &[-1.0]);
        assert!(commensurate_eig_test(&a, 0.5).unwrap().stable);
        let a = DMatrix::from_row_slice(1, 1, &[1.0]);
        assert!(!commensurate_eig_test(&a, 0.5).unwrap().stable);
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.25, -0.625]);
        let rep = commensurate_eig_test(&a, 1.0).unwrap();
        assert!(rep.stable);
        assert!((rep.abs_args[0] - 1.8540784921).abs() < 1e-9);
    }

    #[test]
    fn modal_examples() {
        let term = |q, re: f64, im: f64| {
            ModalTerm::new(q, Complex64::new(re, im), 1, Complex64::new(1.0, 0.0)).unwrap()
        };
        // 1/(s^0.5 + 1): lambda = 1, |arg| = 0 < 0.75 pi
        assert!(modal_stable(&[term(0.5, 1.0, 0.0)]));
        // 1/(s^0.5 - 1): lambda = -1, |arg| = pi >= 0.75 pi
        assert!(!modal_stable(&[term(0.5, -1.0, 0.0)]));
        // integer-order pole on the imaginary axis: |arg(j)| = pi/2 boundary
        assert_eq!(modal_verdict(&[term(1.0, 0.0, 1.0)]), ModalVerdict::Marginal);
        assert!(!modal_stable(&[term(1.0, 0.0, 1.0)]));
        assert!(ModalTerm::new(2.0, Complex64::new(1.0, 0.0), 1, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn companion_form_examples() {
        let ss = to_state_space(&parse_pseudo_polynomial("0.8*s^2.2+0.5*s^0.9+1").unwrap()).unwrap();
        assert_eq!(ss.a, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.25, -0.625]));
        assert_eq!(ss.b, DMatrix::from_row_slice(2, 1, &[0.0, 1.25]));
        assert_eq!(ss.c, DMatrix::from_row_slice(1, 2, &[1.0, 0.0]));
        assert_eq!(ss.q, vec![
            RationalOrder::new(9, 10).unwrap(),
            RationalOrder::new(13, 10).unwrap()
        ]);

        let ss = to_state_space(&parse_pseudo_polynomial("s^2+3*s+2").unwrap()).unwrap();
        assert_eq!(ss.a, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -2.0, -3.0]));
        assert_eq!(ss.q, vec![RationalOrder::ONE, RationalOrder::ONE]);

        let ss = to_state_space(&parse_pseudo_polynomial("s^0.5+1").unwrap()).unwrap();
        assert_eq!(ss.a, DMatrix::from_row_slice(1, 1, &[-1.0]));
        assert_eq!(ss.b, DMatrix::from_row_slice(1, 1, &[1.0]));
        assert_eq!(ss.q, vec![RationalOrder::new(1, 2).unwrap()]);

        assert!(to_state_space(&parse_pseudo_polynomial("s^2+s^0.5").unwrap()).is_err());
        assert!(to_state_space(&parse_pseudo_polynomial("5").unwrap()).is_err());
    }

    #[test]
    fn controllability_and_observability() {
        let ss = to_state_space(&parse_pseudo_polynomial("0.8*s^2.2+0.5*s^0.9+1").unwrap()).unwrap();
        assert!(controllable(&ss));
        assert!(observable(&ss));

        let not_controllable = StateSpace {
            a: DMatrix::identity(2, 2),
            b: DMatrix::from_row_slice(2, 1, &[1.0, 0.0]),
            c: DMatrix::from_row_slice(1, 2, &[1.0, 0.0]),
            q: vec![RationalOrder::ONE, RationalOrder::ONE],
        };
        assert!(!controllable(&not_controllable));

        let blind = StateSpace {
            a: DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, -1.0]),
            b: DMatrix::from_row_slice(2, 1, &[0.0, 1.0]),
            c: DMatrix::from_row_slice(1, 2, &[0.0, 0.0]),
            q: vec![RationalOrder::ONE, RationalOrder::ONE],
        };
        assert!(!observable(&blind));
    }

    #[test]
    fn final_value_examples() {
        let tf = parse_transfer_function("1/(s^1.5+s)").unwrap();
        assert_eq!(final_value(&tf).unwrap(), FinalValue::Value(1.0));
        let tf = parse_transfer_function("1/(s+1)").unwrap();
        assert_eq!(final_value(&tf).unwrap(), FinalValue::Value(0.0));
        let tf = parse_transfer_function("1/(s^2)").unwrap();
        assert_eq!(final_value(&tf).unwrap(), FinalValue::Indeterminate);
    }
}

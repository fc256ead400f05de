//! Thin wrappers around nalgebra: eigenvalues of small dense real matrices
//! and numeric rank via singular values.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// All eigenvalues of a square real matrix, sorted by descending real part
/// then descending imaginary part.
pub fn eigenvalues(a: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    if a.nrows() != a.ncols() {
        return Err(Error::InvalidInput(format!(
            "eigenvalues of a {}x{} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.nrows() == 0 {
        return Err(Error::InvalidInput("eigenvalues of an empty matrix".into()));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("matrix contains non-finite entries".into()));
    }
    let eig = a.clone().complex_eigenvalues();
    let mut out: Vec<Complex64> = eig.iter().map(|l| Complex64::new(l.re, l.im)).collect();
    out.sort_by(|x, y| {
        y.re.partial_cmp(&x.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(y.im.partial_cmp(&x.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(out)
}

/// Numeric rank with threshold `n * ||M|| * 1e-12` on the singular values.
pub fn rank(m: &DMatrix<f64>) -> usize {
    let n = m.nrows().max(m.ncols());
    let svd = m.clone().svd(false, false);
    let norm = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let threshold = n as f64 * norm * 1e-12;
    svd.singular_values.iter().filter(|&&s| s > threshold).count()
}

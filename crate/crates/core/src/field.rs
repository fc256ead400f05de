//! Polynomial vector fields: multivariate polynomial components over state
//! variables `x1..xn` with exact symbolic partial derivatives.

use crate::error::{Error, Result};
use crate::orders::RationalOrder;

/// A real multivariate polynomial stored as monomials
/// `(coefficient, exponent vector)`; every exponent vector has the same
/// length (the state dimension).
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPolynomial {
    dim: usize,
    monomials: Vec<(f64, Vec<u32>)>,
}

impl MultiPolynomial {
    pub fn new(dim: usize, monomials: Vec<(f64, Vec<u32>)>) -> Result<Self> {
        let mut sorted = monomials;
        for (_, e) in &sorted {
            if e.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "monomial exponent vector of length {} in a {dim}-dimensional field",
                    e.len()
                )));
            }
        }
        sorted.sort_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(f64, Vec<u32>)> = Vec::with_capacity(sorted.len());
        for (c, e) in sorted {
            match merged.last_mut() {
                Some(last) if last.1 == e => last.0 += c,
                _ => merged.push((c, e)),
            }
        }
        merged.retain(|(c, _)| *c != 0.0);
        Ok(Self { dim, monomials: merged })
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, monomials: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn monomials(&self) -> &[(f64, Vec<u32>)] {
        &self.monomials
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.monomials
            .iter()
            .map(|(c, exps)| {
                let mut v = *c;
                for (xi, &e) in x.iter().zip(exps) {
                    v *= xi.powi(e as i32);
                }
                v
            })
            .sum()
    }

    /// Exact partial derivative with respect to `x_{var+1}`.
    pub fn partial(&self, var: usize) -> Self {
        let monomials = self
            .monomials
            .iter()
            .filter(|(_, e)| e[var] > 0)
            .map(|(c, e)| {
                let mut de = e.clone();
                de[var] -= 1;
                (c * e[var] as f64, de)
            })
            .collect();
        Self { dim: self.dim, monomials }
    }

    /// Largest coefficient magnitude; used as a residual scale.
    pub fn coeff_scale(&self) -> f64 {
        self.monomials.iter().map(|(c, _)| c.abs()).fold(0.0, f64::max)
    }
}

/// An incommensurate fractional-order system `D^{q_i} x_i = f_i(x)` with
/// polynomial right-hand sides.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialVectorField {
    orders: Vec<RationalOrder>,
    components: Vec<MultiPolynomial>,
}

impl PolynomialVectorField {
    pub fn new(orders: Vec<RationalOrder>, components: Vec<MultiPolynomial>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::InvalidInput("vector field needs at least one component".into()));
        }
        if orders.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} orders for {n} components",
                orders.len()
            )));
        }
        for q in &orders {
            let v = q.as_f64();
            if !(v > 0.0 && v < 2.0) {
                return Err(Error::Domain(format!("derivative order {q} outside (0, 2)")));
            }
        }
        for c in &components {
            if c.dim() != n {
                return Err(Error::InvalidInput(format!(
                    "component over {} variables in a {n}-dimensional field",
                    c.dim()
                )));
            }
        }
        Ok(Self { orders, components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn orders(&self) -> &[RationalOrder] {
        &self.orders
    }

    pub fn components(&self) -> &[MultiPolynomial] {
        &self.components
    }

    pub fn eval(&self, x: &[f64], out: &mut [f64]) {
        for (o, c) in out.iter_mut().zip(&self.components) {
            *o = c.eval(x);
        }
    }

    pub fn eval_vec(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    /// Largest coefficient magnitude across components.
    pub fn coeff_scale(&self) -> f64 {
        self.components.iter().map(|c| c.coeff_scale()).fold(0.0, f64::max).max(1.0)
    }

    /// The Chen double-scroll benchmark system with derivative orders
    /// (0.8, 1.0, 0.9).
    pub fn chen() -> Self {
        let ord = |n, d| RationalOrder::new(n, d).unwrap();
        let mono = |c: f64, e: [u32; 3]| (c, e.to_vec());
        let f1 = MultiPolynomial::new(3, vec![mono(35.0, [0, 1, 0]), mono(-35.0, [1, 0, 0])]).unwrap();
        let f2 = MultiPolynomial::new(
            3,
            vec![mono(-7.0, [1, 0, 0]), mono(-1.0, [1, 0, 1]), mono(28.0, [0, 1, 0])],
        )
        .unwrap();
        let f3 = MultiPolynomial::new(3, vec![mono(1.0, [1, 1, 0]), mono(-3.0, [0, 0, 1])]).unwrap();
        Self::new(vec![ord(4, 5), ord(1, 1), ord(9, 10)], vec![f1, f2, f3]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_partial() {
        // f = 3 x1^2 x2 - x2 + 1
        let f = MultiPolynomial::new(
            2,
            vec![(3.0, vec![2, 1]), (-1.0, vec![0, 1]), (1.0, vec![0, 0])],
        )
        .unwrap();
        assert_eq!(f.eval(&[2.0, 1.0]), 12.0);
        let dx1 = f.partial(0);
        assert_eq!(dx1.eval(&[2.0, 1.0]), 12.0); // 6 x1 x2
        let dx2 = f.partial(1);
        assert_eq!(dx2.eval(&[2.0, 5.0]), 11.0); // 3 x1^2 - 1
    }

    #[test]
    fn merges_duplicate_monomials() {
        let f = MultiPolynomial::new(1, vec![(1.0, vec![1]), (2.0, vec![1]), (-3.0, vec![1])])
            .unwrap();
        assert!(f.monomials().is_empty());
    }

    #[test]
    fn order_domain_enforced() {
        let f = MultiPolynomial::new(1, vec![(-1.0, vec![1])]).unwrap();
        assert!(PolynomialVectorField::new(vec![RationalOrder::new(2, 1).unwrap()], vec![f.clone()]).is_err());
        assert!(PolynomialVectorField::new(vec![RationalOrder::ZERO], vec![f]).is_err());
    }

    #[test]
    fn chen_field_values() {
        let chen = PolynomialVectorField::chen();
        let v = chen.eval_vec(&[1.0, 2.0, 3.0]);
        assert_eq!(v, vec![35.0, 46.0, -7.0]);
        assert_eq!(chen.orders()[0], RationalOrder::new(4, 5).unwrap());
    }
}

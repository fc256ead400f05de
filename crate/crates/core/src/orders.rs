//! Exact rational derivative orders, pseudo-polynomials and their lift to an
//! ordinary polynomial on the w-plane.
//!
//! A pseudo-polynomial is a sum of real-coefficient terms `c * s^q` with
//! rational exponents `q`. Substituting `w = s^(1/m)`, with `m` the least
//! common multiple of the exponent denominators, turns it into an ordinary
//! polynomial in `w` whose degree is the fractional degree of the source.

use crate::error::{Error, Result};
use num_complex::Complex64;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm_checked(a: i64, b: i64) -> Option<i64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// An exact fraction used as a derivative order or exponent.
///
/// Always stored in lowest terms with a positive denominator; zero is `0/1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalOrder {
    num: i64,
    den: i64,
}

impl RationalOrder {
    pub const ZERO: RationalOrder = RationalOrder { num: 0, den: 1 };
    pub const ONE: RationalOrder = RationalOrder { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput("rational order with zero denominator".into()));
        }
        let sign = if den < 0 { -1 } else { 1 };
        let (num, den) = (num * sign, den * sign);
        let g = gcd(num, den);
        if g == 0 {
            return Ok(Self::ZERO);
        }
        Ok(Self { num: num / g, den: den / g })
    }

    pub fn from_integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    /// Reads a decimal literal such as `"2.2"` or `"0.9"` as an exact
    /// fraction (`11/5`, `9/10`), reducing to lowest terms.
    pub fn from_decimal_str(text: &str) -> Result<Self> {
        let s = text.trim();
        let (sign, digits) = match s.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1i64, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::InvalidInput(format!("not a decimal number: {text:?}")));
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(Error::InvalidInput(format!("not a decimal number: {text:?}")));
        }
        let mut num: i64 = 0;
        for c in int_part.chars().chain(frac_part.chars()) {
            num = num
                .checked_mul(10)
                .and_then(|n| n.checked_add((c as u8 - b'0') as i64))
                .ok_or_else(|| Error::InvalidInput(format!("decimal overflows: {text:?}")))?;
        }
        let mut den: i64 = 1;
        for _ in 0..frac_part.len() {
            den = den
                .checked_mul(10)
                .ok_or_else(|| Error::InvalidInput(format!("decimal overflows: {text:?}")))?;
        }
        Self::new(sign * num, den)
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let num = self
            .num
            .checked_mul(other.den)
            .and_then(|a| other.num.checked_mul(self.den).and_then(|b| a.checked_add(b)))
            .ok_or_else(|| Error::InvalidInput("rational order overflow in add".into()))?;
        let den = self
            .den
            .checked_mul(other.den)
            .ok_or_else(|| Error::InvalidInput("rational order overflow in add".into()))?;
        Self::new(num, den)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&Self { num: -other.num, den: other.den })
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let num = self
            .num
            .checked_mul(k)
            .ok_or_else(|| Error::InvalidInput("rational order overflow in scale".into()))?;
        Self::new(num, self.den)
    }

    /// `self * m` when the result is an integer (used by the w-plane lift).
    pub fn times_integer_exact(&self, m: i64) -> Result<i64> {
        let prod = self
            .num
            .checked_mul(m)
            .ok_or_else(|| Error::InvalidInput("rational order overflow in lift".into()))?;
        if prod % self.den != 0 {
            return Err(Error::InvalidInput(format!(
                "{} is not an integer multiple of 1/{}",
                self, m
            )));
        }
        Ok(prod / self.den)
    }
}

impl PartialOrd for RationalOrder {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalOrder {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // i128 cross multiplication cannot overflow for i64 fields
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl std::fmt::Display for RationalOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Largest w-plane degree the lift will produce. The root finder's accuracy
/// contract only covers degree 64; anything above 128 is rejected outright.
pub const MAX_FDEG: i64 = 128;

/// Sum of real-coefficient terms `c * s^q` with rational exponents.
///
/// Terms are kept in strictly descending exponent order, duplicates merged,
/// zero coefficients dropped. The all-zero polynomial is the empty sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoPolynomial {
    terms: Vec<(f64, RationalOrder)>,
}

impl PseudoPolynomial {
    pub fn new(terms: Vec<(f64, RationalOrder)>) -> Self {
        let mut sorted = terms;
        sorted.sort_by(|a, b| b.1.cmp(&a.1));
        let mut merged: Vec<(f64, RationalOrder)> = Vec::with_capacity(sorted.len());
        for (c, q) in sorted {
            match merged.last_mut() {
                Some(last) if last.1 == q => last.0 += c,
                _ => merged.push((c, q)),
            }
        }
        merged.retain(|(c, _)| *c != 0.0);
        Self { terms: merged }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![(c, RationalOrder::ZERO)])
    }

    pub fn terms(&self) -> &[(f64, RationalOrder)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Leading (highest-order) term.
    pub fn leading(&self) -> Option<(f64, RationalOrder)> {
        self.terms.first().copied()
    }

    /// Lowest-order term.
    pub fn trailing(&self) -> Option<(f64, RationalOrder)> {
        self.terms.last().copied()
    }

    pub fn has_negative_order(&self) -> bool {
        self.terms.iter().any(|(_, q)| q.is_negative())
    }

    /// Evaluates the pseudo-polynomial at a complex point using the
    /// principal branch of `s^q`. `s` must avoid the branch cut for the
    /// result to be meaningful as a value on the first Riemann sheet.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, q)| {
                if q.is_zero() {
                    Complex64::new(*c, 0.0)
                } else {
                    c * s.powf(q.as_f64())
                }
            })
            .sum()
    }

    /// Multiplies by `s^shift` (exact exponent bookkeeping).
    pub fn shift_order(&self, shift: &RationalOrder) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, q) in &self.terms {
            terms.push((*c, q.checked_add(shift)?));
        }
        Ok(Self::new(terms))
    }
}

/// Ordinary polynomial in `w = s^(1/m)`, dense coefficients indexed by degree.
#[derive(Debug, Clone, PartialEq)]
pub struct WPolynomial {
    /// Coefficient of degree `i` at index `i`; the last entry is nonzero.
    pub coeffs: Vec<f64>,
    /// The lift denominator: `w^m = s`.
    pub m: i64,
}

impl WPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * w + c;
        }
        acc
    }
}

/// Least common multiple of the denominators of `orders`.
///
/// Orders must already be in lowest terms (the `RationalOrder` invariant),
/// so integer orders contribute 1.
pub fn lcm_of_orders(orders: &[RationalOrder]) -> Result<i64> {
    if orders.is_empty() {
        return Err(Error::InvalidInput("lcm_of_orders: empty order sequence".into()));
    }
    let mut m: i64 = 1;
    for q in orders {
        m = lcm_checked(m, q.denominator())
            .ok_or_else(|| Error::InvalidInput("lcm_of_orders: LCM overflows i64".into()))?;
    }
    Ok(m)
}

/// Lifts a pseudo-polynomial to the w-plane: with `m` the LCM of the order
/// denominators, the term `c * s^q` becomes `c * w^(q*m)`.
pub fn to_w_polynomial(p: &PseudoPolynomial) -> Result<WPolynomial> {
    if p.is_empty() {
        return Err(Error::InvalidInput("cannot lift the zero polynomial".into()));
    }
    if p.has_negative_order() {
        return Err(Error::InvalidInput("cannot lift a polynomial with negative orders".into()));
    }
    let orders: Vec<RationalOrder> = p.terms.iter().map(|(_, q)| *q).collect();
    let m = lcm_of_orders(&orders)?;
    let mut degree = 0i64;
    for q in &orders {
        degree = degree.max(q.times_integer_exact(m)?);
    }
    if degree > MAX_FDEG {
        return Err(Error::Unsupported(format!(
            "fractional degree {degree} exceeds the supported maximum {MAX_FDEG}"
        )));
    }
    let mut coeffs = vec![0.0; degree as usize + 1];
    for (c, q) in &p.terms {
        let d = q.times_integer_exact(m)? as usize;
        coeffs[d] += *c;
    }
    Ok(WPolynomial { coeffs, m })
}

/// Fractional degree: the w-plane degree of the lift, i.e. the number of
/// roots on the Riemann surface.
pub fn fdeg(p: &PseudoPolynomial) -> Result<usize> {
    if p.is_empty() {
        return Err(Error::InvalidInput("fdeg of the zero polynomial".into()));
    }
    Ok(to_w_polynomial(p)?.degree())
}

/// True when the lift uses no redundant Riemann sheets: the gcd of all
/// lifted exponents together with `m` is 1. With orders stored in lowest
/// terms this always holds; the check computes the gcd honestly anyway.
pub fn is_minimal(p: &PseudoPolynomial) -> Result<bool> {
    if p.is_empty() {
        return Err(Error::InvalidInput("is_minimal of the zero polynomial".into()));
    }
    let orders: Vec<RationalOrder> = p.terms.iter().map(|(_, q)| *q).collect();
    let m = lcm_of_orders(&orders)?;
    let mut g = m;
    for q in &orders {
        g = gcd(g, q.times_integer_exact(m)?);
    }
    Ok(g == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: i64, d: i64) -> RationalOrder {
        RationalOrder::new(n, d).unwrap()
    }

    #[test]
    fn rational_reduces_on_construction() {
        assert_eq!(ord(22, 10), ord(11, 5));
        assert_eq!(ord(2, 4), ord(1, 2));
        assert_eq!(ord(-3, -6), ord(1, 2));
        assert_eq!(ord(3, -6).numerator(), -1);
        assert_eq!(ord(0, 7), RationalOrder::ZERO);
        assert_eq!(ord(0, 7).denominator(), 1);
    }

    #[test]
    fn decimal_reading_is_exact() {
        assert_eq!(RationalOrder::from_decimal_str("2.2").unwrap(), ord(11, 5));
        assert_eq!(RationalOrder::from_decimal_str("0.9").unwrap(), ord(9, 10));
        assert_eq!(RationalOrder::from_decimal_str("1.25").unwrap(), ord(5, 4));
        assert_eq!(RationalOrder::from_decimal_str("3").unwrap(), ord(3, 1));
        assert_eq!(RationalOrder::from_decimal_str("-0.5").unwrap(), ord(-1, 2));
        assert!(RationalOrder::from_decimal_str("1.2.3").is_err());
        assert!(RationalOrder::from_decimal_str("").is_err());
    }

    #[test]
    fn lcm_examples() {
        // 2.2, 0.9 and the constant term
        let orders = [ord(22, 10), ord(9, 10), ord(0, 1)];
        assert_eq!(lcm_of_orders(&orders).unwrap(), 10);
        let orders = [ord(5, 4), ord(1, 1), ord(0, 1)];
        assert_eq!(lcm_of_orders(&orders).unwrap(), 4);
        let orders = [ord(1, 1), ord(2, 1), ord(3, 1)];
        assert_eq!(lcm_of_orders(&orders).unwrap(), 1);
        assert!(lcm_of_orders(&[]).is_err());
    }

    #[test]
    fn lift_degree22_characteristic() {
        let p = PseudoPolynomial::new(vec![
            (0.8, ord(11, 5)),
            (0.5, ord(9, 10)),
            (1.0, RationalOrder::ZERO),
        ]);
        let w = to_w_polynomial(&p).unwrap();
        assert_eq!(w.m, 10);
        assert_eq!(w.degree(), 22);
        assert_eq!(w.coeffs[22], 0.8);
        assert_eq!(w.coeffs[9], 0.5);
        assert_eq!(w.coeffs[0], 1.0);
        assert_eq!(w.coeffs.iter().filter(|&&c| c != 0.0).count(), 3);
        assert_eq!(fdeg(&p).unwrap(), 22);
    }

    #[test]
    fn lift_heater_characteristic() {
        let p = PseudoPolynomial::new(vec![
            (39.69, ord(5, 4)),
            (12.46, RationalOrder::ONE),
            (65.068, RationalOrder::ZERO),
        ]);
        let w = to_w_polynomial(&p).unwrap();
        assert_eq!(w.m, 4);
        assert_eq!(w.degree(), 5);
        assert_eq!(w.coeffs[5], 39.69);
        assert_eq!(w.coeffs[4], 12.46);
        assert_eq!(w.coeffs[0], 65.068);
    }

    #[test]
    fn lift_integer_polynomial_is_itself() {
        let p = PseudoPolynomial::new(vec![(1.0, RationalOrder::ONE), (1.0, RationalOrder::ZERO)]);
        let w = to_w_polynomial(&p).unwrap();
        assert_eq!(w.m, 1);
        assert_eq!(w.coeffs, vec![1.0, 1.0]);
    }

    #[test]
    fn fdeg_examples() {
        let half = PseudoPolynomial::new(vec![(1.0, ord(1, 2)), (2.0, RationalOrder::ZERO)]);
        assert_eq!(fdeg(&half).unwrap(), 1);
        let constant = PseudoPolynomial::constant(5.0);
        assert_eq!(fdeg(&constant).unwrap(), 0);
        assert!(fdeg(&PseudoPolynomial::new(vec![])).is_err());
    }

    #[test]
    fn construction_merges_and_drops_zeros() {
        let p = PseudoPolynomial::new(vec![
            (1.0, ord(1, 2)),
            (2.0, ord(2, 4)),
            (0.0, ord(3, 1)),
            (1.0, ord(1, 1)),
            (-1.0, ord(1, 1)),
        ]);
        assert_eq!(p.terms(), &[(3.0, ord(1, 2))]);
        let zero = PseudoPolynomial::new(vec![(1.0, ord(1, 1)), (-1.0, ord(1, 1))]);
        assert!(zero.is_empty());
    }

    #[test]
    fn minimality() {
        let p = PseudoPolynomial::new(vec![(1.0, ord(1, 2)), (1.0, RationalOrder::ZERO)]);
        assert!(is_minimal(&p).unwrap());
        // entered unreduced, reduces on construction
        let p = PseudoPolynomial::new(vec![(1.0, ord(2, 4)), (1.0, RationalOrder::ZERO)]);
        assert!(is_minimal(&p).unwrap());
        let p = PseudoPolynomial::new(vec![
            (1.0, ord(11, 5)),
            (1.0, ord(9, 10)),
            (1.0, RationalOrder::ZERO),
        ]);
        // gcd(22, 9, 0, 10) = 1
        assert!(is_minimal(&p).unwrap());
    }

    #[test]
    fn fdeg_cap_rejected() {
        let p = PseudoPolynomial::new(vec![(1.0, ord(129, 1)), (1.0, RationalOrder::ZERO)]);
        assert!(matches!(to_w_polynomial(&p), Err(Error::Unsupported(_))));
    }

    #[test]
    fn negative_order_rejected() {
        let p = PseudoPolynomial::new(vec![(1.0, ord(-1, 2)), (1.0, RationalOrder::ZERO)]);
        assert!(to_w_polynomial(&p).is_err());
    }
}

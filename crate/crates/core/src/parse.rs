//! Text formats: pseudo-polynomials, transfer functions and polynomial
//! vector fields.
//!
//! The grammar is LL(1) with explicit tokens; errors carry the byte offset
//! of the offending token and what was expected there. Exponents become
//! exact rationals; coefficients stay binary floating point.
//!
//! ```text
//! poly   := [sign] term ((`+`|`-`) [sign] term)*
//! term   := coeff [`*`] [spart] | spart
//! spart  := `s` [`^` order]
//! order  := [`-`] number [`/` number]
//! tf     := part [`/` part]
//! part   := `(` poly `)` | poly
//! ```
//!
//! Vector-field components are polynomials in `x1..xn` with `*` products,
//! `^` integer powers and parentheses.

use crate::error::{Error, Result};
use crate::field::{MultiPolynomial, PolynomialVectorField};
use crate::orders::{PseudoPolynomial, RationalOrder};

/// A parsed transfer function `numerator / denominator` of pseudo-polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferFunction {
    num: PseudoPolynomial,
    den: PseudoPolynomial,
}

impl TransferFunction {
    pub fn new(num: PseudoPolynomial, den: PseudoPolynomial) -> Result<Self> {
        if den.is_empty() {
            return Err(Error::Domain("transfer function denominator is zero".into()));
        }
        if num.has_negative_order() || den.has_negative_order() {
            return Err(Error::Domain("transfer function orders must be nonnegative".into()));
        }
        Ok(Self { num, den })
    }

    pub fn numerator(&self) -> &PseudoPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &PseudoPolynomial {
        &self.den
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Number(f64),
    /// The `s` variable of a pseudo-polynomial.
    S,
    /// A state variable `x<index>`.
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> &'static str {
        match self {
            Tok::Number(_) => "number",
            Tok::S => "'s'",
            Tok::Var(_) => "variable",
            Tok::Plus => "'+'",
            Tok::Minus => "'-'",
            Tok::Star => "'*'",
            Tok::Slash => "'/'",
            Tok::Caret => "'^'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::End => "end of input",
        }
    }
}

struct Lexer<'a> {
    tokens: Vec<(Tok, usize, &'a str)>,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let b = bytes[i];
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    i += 1;
                }
                b'+' => {
                    tokens.push((Tok::Plus, i, "+"));
                    i += 1;
                }
                b'-' => {
                    tokens.push((Tok::Minus, i, "-"));
                    i += 1;
                }
                b'*' => {
                    tokens.push((Tok::Star, i, "*"));
                    i += 1;
                }
                b'/' => {
                    tokens.push((Tok::Slash, i, "/"));
                    i += 1;
                }
                b'^' => {
                    tokens.push((Tok::Caret, i, "^"));
                    i += 1;
                }
                b'(' => {
                    tokens.push((Tok::LParen, i, "("));
                    i += 1;
                }
                b')' => {
                    tokens.push((Tok::RParen, i, ")"));
                    i += 1;
                }
                b's' | b'S' => {
                    tokens.push((Tok::S, i, &text[i..i + 1]));
                    i += 1;
                }
                b'x' | b'X' => {
                    let start = i;
                    i += 1;
                    let digits_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == digits_start {
                        return Err(Error::Parse {
                            offset: start,
                            message: "variable needs an index, e.g. x1".into(),
                        });
                    }
                    let idx: usize = text[digits_start..i].parse().map_err(|_| Error::Parse {
                        offset: start,
                        message: "variable index out of range".into(),
                    })?;
                    if idx == 0 {
                        return Err(Error::Parse {
                            offset: start,
                            message: "variable indices start at x1".into(),
                        });
                    }
                    tokens.push((Tok::Var(idx), start, &text[start..i]));
                }
                b'0'..=b'9' | b'.' => {
                    let start = i;
                    while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                        i += 1;
                    }
                    let slice = &text[start..i];
                    let value: f64 = slice.parse().map_err(|_| Error::Parse {
                        offset: start,
                        message: format!("malformed number {slice:?}"),
                    })?;
                    tokens.push((Tok::Number(value), start, slice));
                }
                _ => {
                    return Err(Error::Parse {
                        offset: i,
                        message: format!(
                            "unexpected character {:?}",
                            text[i..].chars().next().unwrap()
                        ),
                    });
                }
            }
        }
        tokens.push((Tok::End, text.len(), ""));
        Ok(Self { tokens, pos: 0 })
    }

    fn peek(&self) -> Tok {
        self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    /// Source text of the token at the cursor (used for exact exponents).
    fn slice(&self) -> &'a str {
        self.tokens[self.pos].2
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].0;
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if std::mem::discriminant(&self.peek()) == std::mem::discriminant(&tok) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(tok.describe()))
        }
    }

    fn unexpected(&self, expected: &str) -> Error {
        Error::Parse {
            offset: self.offset(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        }
    }
}

/// Exponent: `[-] number [/ number]`, returned as an exact rational.
/// A negative value is a domain error, not a syntax error.
fn parse_order(lx: &mut Lexer) -> Result<RationalOrder> {
    let neg = if lx.peek() == Tok::Minus {
        lx.bump();
        true
    } else {
        false
    };
    let offset = lx.offset();
    let numerator = match lx.peek() {
        Tok::Number(_) => {
            let r = RationalOrder::from_decimal_str(lx.slice())
                .map_err(|e| Error::Parse { offset, message: e.to_string() })?;
            lx.bump();
            r
        }
        _ => return Err(lx.unexpected("number")),
    };
    let mut order = numerator;
    if lx.peek() == Tok::Slash {
        lx.bump();
        let offset = lx.offset();
        let denominator = match lx.peek() {
            Tok::Number(_) => {
                let r = RationalOrder::from_decimal_str(lx.slice())
                    .map_err(|e| Error::Parse { offset, message: e.to_string() })?;
                lx.bump();
                r
            }
            _ => return Err(lx.unexpected("number")),
        };
        if denominator.is_zero() {
            return Err(Error::Domain("exponent with zero denominator".into()));
        }
        order = RationalOrder::new(
            order.numerator() * denominator.denominator(),
            order.denominator() * denominator.numerator(),
        )?;
    }
    if neg && !order.is_zero() {
        return Err(Error::Domain(format!("negative order s^-{order} is not supported")));
    }
    Ok(order)
}

/// One `[coeff][*][s[^order]]` term. At least one of the coefficient and the
/// `s` part must be present.
fn parse_term(lx: &mut Lexer, sign: f64) -> Result<(f64, RationalOrder)> {
    let mut coeff = sign;
    let mut saw_number = false;
    if let Tok::Number(v) = lx.peek() {
        coeff *= v;
        saw_number = true;
        lx.bump();
        if lx.peek() == Tok::Star {
            lx.bump();
            // after an explicit `*` the s part is mandatory
            if lx.peek() != Tok::S {
                return Err(lx.unexpected("'s'"));
            }
        }
    }
    if lx.peek() == Tok::S {
        lx.bump();
        let order = if lx.peek() == Tok::Caret {
            lx.bump();
            parse_order(lx)?
        } else {
            RationalOrder::ONE
        };
        Ok((coeff, order))
    } else if saw_number {
        Ok((coeff, RationalOrder::ZERO))
    } else {
        Err(lx.unexpected("a coefficient or 's'"))
    }
}

/// Parses terms until a token that cannot continue a sum (`)`, a top-level
/// `/`, or the end of input).
fn parse_poly_until_stop(lx: &mut Lexer) -> Result<PseudoPolynomial> {
    let mut terms = Vec::new();
    let first_sign = match lx.peek() {
        Tok::Plus => {
            lx.bump();
            1.0
        }
        Tok::Minus => {
            lx.bump();
            -1.0
        }
        _ => 1.0,
    };
    terms.push(parse_term(lx, first_sign)?);
    loop {
        let sep = lx.peek();
        match sep {
            Tok::Plus | Tok::Minus => {
                lx.bump();
            }
            Tok::End | Tok::RParen | Tok::Slash => break,
            _ => return Err(lx.unexpected("'+', '-' or end of polynomial")),
        }
        let mut sign = if sep == Tok::Minus { -1.0 } else { 1.0 };
        // `a + -2*s` is accepted: the extra sign belongs to the coefficient
        if sep == Tok::Plus && lx.peek() == Tok::Minus {
            lx.bump();
            sign = -1.0;
        }
        terms.push(parse_term(lx, sign)?);
    }
    Ok(PseudoPolynomial::new(terms))
}

/// Parses a textual pseudo-polynomial such as `0.8*s^2.2 + 0.5*s^0.9 + 1`.
pub fn parse_pseudo_polynomial(text: &str) -> Result<PseudoPolynomial> {
    let mut lx = Lexer::new(text)?;
    let p = parse_poly_until_stop(&mut lx)?;
    if lx.peek() != Tok::End {
        return Err(lx.unexpected("end of input"));
    }
    Ok(p)
}

fn parse_tf_part(lx: &mut Lexer) -> Result<PseudoPolynomial> {
    if lx.peek() == Tok::LParen {
        lx.bump();
        let p = parse_poly_until_stop(lx)?;
        lx.expect(Tok::RParen)?;
        Ok(p)
    } else {
        parse_poly_until_stop(lx)
    }
}

/// Parses `(<poly>)/(<poly>)` or a bare `<poly>` (shorthand for a
/// characteristic denominator with numerator 1).
pub fn parse_transfer_function(text: &str) -> Result<TransferFunction> {
    let mut lx = Lexer::new(text)?;
    let first = parse_tf_part(&mut lx)?;
    match lx.peek() {
        Tok::Slash => {
            lx.bump();
            let den = parse_tf_part(&mut lx)?;
            if lx.peek() != Tok::End {
                return Err(lx.unexpected("end of input"));
            }
            TransferFunction::new(first, den)
        }
        Tok::End => TransferFunction::new(PseudoPolynomial::constant(1.0), first),
        _ => Err(lx.unexpected("'/' or end of input")),
    }
}

// --- vector fields ---------------------------------------------------------

fn mp_mul(a: &MultiPolynomial, b: &MultiPolynomial) -> Result<MultiPolynomial> {
    let dim = a.dim();
    let mut out = Vec::with_capacity(a.monomials().len() * b.monomials().len());
    for (ca, ea) in a.monomials() {
        for (cb, eb) in b.monomials() {
            let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out.push((ca * cb, exps));
        }
    }
    MultiPolynomial::new(dim, out)
}

fn mp_constant(dim: usize, c: f64) -> MultiPolynomial {
    MultiPolynomial::new(dim, vec![(c, vec![0; dim])]).expect("constant monomial")
}

fn mp_var_power(dim: usize, var: usize, power: u32) -> MultiPolynomial {
    let mut e = vec![0u32; dim];
    e[var] = power;
    MultiPolynomial::new(dim, vec![(1.0, e)]).expect("variable monomial")
}

fn mp_add(a: &MultiPolynomial, b: &MultiPolynomial, sign: f64) -> Result<MultiPolynomial> {
    let mut out: Vec<(f64, Vec<u32>)> = a.monomials().to_vec();
    out.extend(b.monomials().iter().map(|(c, e)| (sign * c, e.clone())));
    MultiPolynomial::new(a.dim(), out)
}

fn parse_field_factor(lx: &mut Lexer, dim: usize) -> Result<MultiPolynomial> {
    match lx.peek() {
        Tok::Number(v) => {
            lx.bump();
            Ok(mp_constant(dim, v))
        }
        Tok::Var(idx) => {
            let offset = lx.offset();
            lx.bump();
            if idx > dim {
                return Err(Error::Parse {
                    offset,
                    message: format!("variable x{idx} exceeds the field dimension {dim}"),
                });
            }
            let power = if lx.peek() == Tok::Caret {
                lx.bump();
                match lx.peek() {
                    Tok::Number(v) => {
                        if v.fract() != 0.0 || v < 0.0 || v > u32::MAX as f64 {
                            return Err(Error::Parse {
                                offset: lx.offset(),
                                message: "variable powers must be nonnegative integers".into(),
                            });
                        }
                        lx.bump();
                        v as u32
                    }
                    _ => return Err(lx.unexpected("integer power")),
                }
            } else {
                1
            };
            Ok(mp_var_power(dim, idx - 1, power))
        }
        Tok::LParen => {
            lx.bump();
            let e = parse_field_expr(lx, dim)?;
            lx.expect(Tok::RParen)?;
            Ok(e)
        }
        _ => Err(lx.unexpected("number, variable or '('")),
    }
}

fn parse_field_product(lx: &mut Lexer, dim: usize) -> Result<MultiPolynomial> {
    let mut acc = parse_field_factor(lx, dim)?;
    while lx.peek() == Tok::Star {
        lx.bump();
        let f = parse_field_factor(lx, dim)?;
        acc = mp_mul(&acc, &f)?;
    }
    Ok(acc)
}

fn parse_field_expr(lx: &mut Lexer, dim: usize) -> Result<MultiPolynomial> {
    let mut sign = 1.0;
    match lx.peek() {
        Tok::Minus => {
            lx.bump();
            sign = -1.0;
        }
        Tok::Plus => {
            lx.bump();
        }
        _ => {}
    }
    let first = parse_field_product(lx, dim)?;
    let mut acc = mp_mul(&first, &mp_constant(dim, sign))?;
    loop {
        let sign = match lx.peek() {
            Tok::Plus => 1.0,
            Tok::Minus => -1.0,
            _ => break,
        };
        lx.bump();
        let p = parse_field_product(lx, dim)?;
        acc = mp_add(&acc, &p, sign)?;
    }
    Ok(acc)
}

/// Parses one polynomial component in variables `x1..x<dim>`.
pub fn parse_field_component(text: &str, dim: usize) -> Result<MultiPolynomial> {
    let mut lx = Lexer::new(text)?;
    let e = parse_field_expr(&mut lx, dim)?;
    if lx.peek() != Tok::End {
        return Err(lx.unexpected("end of input"));
    }
    Ok(e)
}

/// Parses a comma-separated order list such as `0.8,1.0,0.9` (fractions
/// `p/q` are accepted too).
pub fn parse_order_list(text: &str) -> Result<Vec<RationalOrder>> {
    text.split(',')
        .map(|part| {
            let mut lx = Lexer::new(part)?;
            let q = parse_order(&mut lx)?;
            if lx.peek() != Tok::End {
                return Err(lx.unexpected("end of order"));
            }
            Ok(q)
        })
        .collect()
}

/// Builds a vector field from an order list and one polynomial per
/// component; the dimension is the component count.
pub fn parse_vector_field(order_list: &str, components: &[&str]) -> Result<PolynomialVectorField> {
    let orders = parse_order_list(order_list)?;
    let dim = components.len();
    if orders.len() != dim {
        return Err(Error::InvalidInput(format!(
            "{} orders for {dim} components",
            orders.len()
        )));
    }
    let comps: Vec<MultiPolynomial> = components
        .iter()
        .map(|c| parse_field_component(c, dim))
        .collect::<Result<_>>()?;
    PolynomialVectorField::new(orders, comps)
}

/// Parses a vector-field file: first significant line `orders: q1,q2,...`,
/// then one `xi' = <polynomial>` line per component (in order); `#` starts
/// a comment.
pub fn parse_vector_field_file(text: &str) -> Result<PolynomialVectorField> {
    let mut orders: Option<Vec<RationalOrder>> = None;
    let mut components: Vec<String> = Vec::new();
    for raw in text.lines() {
        let line = match raw.split_once('#') {
            Some((before, _)) => before.trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("orders:") {
            if orders.is_some() {
                return Err(Error::InvalidInput("duplicate orders line".into()));
            }
            orders = Some(parse_order_list(rest)?);
            continue;
        }
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!("expected `xi' = <polynomial>`, got {line:?}"))
        })?;
        let lhs = lhs.trim();
        let expected = format!("x{}'", components.len() + 1);
        if lhs != expected {
            return Err(Error::InvalidInput(format!(
                "expected component {expected}, found {lhs:?}"
            )));
        }
        components.push(rhs.trim().to_string());
    }
    let orders = orders.ok_or_else(|| Error::InvalidInput("missing orders line".into()))?;
    let refs: Vec<&str> = components.iter().map(|s| s.as_str()).collect();
    if refs.is_empty() {
        return Err(Error::InvalidInput("no components in vector-field file".into()));
    }
    if orders.len() != refs.len() {
        return Err(Error::InvalidInput(format!(
            "{} orders for {} components",
            orders.len(),
            refs.len()
        )));
    }
    parse_vector_field(
        &orders.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","),
        &refs,
    )
}

// --- canonical printer ------------------------------------------------------

/// Canonical text form; `parse_pseudo_polynomial` reads it back exactly.
pub fn pseudo_polynomial_to_string(p: &PseudoPolynomial) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, q)) in p.terms().iter().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if *c < 0.0 {
                out.push('-');
            }
        } else if *c < 0.0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if q.is_zero() {
            out.push_str(&format!("{mag}"));
        } else {
            if mag != 1.0 {
                out.push_str(&format!("{mag}*"));
            }
            out.push('s');
            if *q != RationalOrder::ONE {
                out.push_str(&format!("^{q}"));
            }
        }
    }
    out
}

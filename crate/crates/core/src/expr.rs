//! Expression trees for the nonlinearity `f(x, y)` and their evaluation in
//! the series ring, the bivariate θ/x ring, and in floating point.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::series::{
    format_rational, int, rational_to_f64, Rational, SeriesError, TruncatedSeries,
};

/// Largest exponent accepted by `^`.
pub const MAX_EXPONENT: u32 = 1024;

/// Constant folding gives up on powers whose result would exceed this
/// many bits.
pub const MAX_CONST_BITS: u64 = 1 << 16;

/// Parenthesis/unary nesting accepted by the parser before it gives up.
pub const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(Rational),
    VarX,
    VarY,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    PowInt(Box<Expr>, u32),
    Exp(Box<Expr>),
    /// Division by a nonzero constant.
    DivConst(Box<Expr>, Rational),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn constant(c: Rational) -> Self {
        Expr::Const(c)
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Self {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Expr) -> Self {
        Expr::Neg(Box::new(a))
    }

    pub fn pow(a: Expr, p: u32) -> Self {
        Expr::PowInt(Box::new(a), p)
    }

    pub fn exp(a: Expr) -> Self {
        Expr::Exp(Box::new(a))
    }

    /// `a / c`; `None` when `c` is zero.
    pub fn div_const(a: Expr, c: Rational) -> Option<Self> {
        (!c.is_zero()).then(|| Expr::DivConst(Box::new(a), c))
    }

    pub fn contains_y(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::VarX => false,
            Expr::VarY => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.contains_y() || b.contains_y(),
            Expr::Neg(a) | Expr::PowInt(a, _) | Expr::Exp(a) | Expr::DivConst(a, _) => {
                a.contains_y()
            }
        }
    }

    /// Exact value of a variable-free tree. `exp` folds only at argument 0.
    pub fn const_value(&self) -> Option<Rational> {
        match self {
            Expr::Const(c) => Some(c.clone()),
            Expr::VarX | Expr::VarY => None,
            Expr::Add(a, b) => Some(a.const_value()? + b.const_value()?),
            Expr::Sub(a, b) => Some(a.const_value()? - b.const_value()?),
            Expr::Mul(a, b) => Some(a.const_value()? * b.const_value()?),
            Expr::Neg(a) => Some(-a.const_value()?),
            Expr::PowInt(a, p) => {
                let base = a.const_value()?;
                let bits = base.numer().bits().max(base.denom().bits());
                if bits > 1 && bits.saturating_mul(u64::from(*p)) > MAX_CONST_BITS {
                    return None;
                }
                Some(num_traits::pow(base, *p as usize))
            }
            Expr::Exp(a) => a.const_value()?.is_zero().then(Rational::one),
            Expr::DivConst(a, c) => Some(a.const_value()? / c),
        }
    }

    /// Splits `f` along its top-level sums into `(F, −g)`: the terms that
    /// mention `y` and the terms that do not. Either side may be absent.
    pub fn split_forcing(&self) -> (Option<Expr>, Option<Expr>) {
        let mut terms = Vec::new();
        collect_terms(self, false, &mut terms);
        let mut dependent = None;
        let mut free = None;
        for (negated, term) in terms {
            let slot = if term.contains_y() {
                &mut dependent
            } else {
                &mut free
            };
            *slot = Some(match (slot.take(), negated) {
                (None, false) => term.clone(),
                (None, true) => Expr::neg(term.clone()),
                (Some(acc), false) => Expr::add(acc, term.clone()),
                (Some(acc), true) => Expr::sub(acc, term.clone()),
            });
        }
        (dependent, free)
    }

    /// Upper bound on the `x`-degree of the tree when `y` is a polynomial
    /// of degree `y_degree`; `None` when an `exp` of a nonzero argument
    /// makes the result non-polynomial.
    pub fn degree_bound(&self, y_degree: usize) -> Option<usize> {
        match self {
            Expr::Const(_) => Some(0),
            Expr::VarX => Some(1),
            Expr::VarY => Some(y_degree),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                Some(a.degree_bound(y_degree)?.max(b.degree_bound(y_degree)?))
            }
            Expr::Mul(a, b) => Some(a.degree_bound(y_degree)? + b.degree_bound(y_degree)?),
            Expr::Neg(a) | Expr::DivConst(a, _) => a.degree_bound(y_degree),
            Expr::PowInt(a, p) => a.degree_bound(y_degree)?.checked_mul(*p as usize),
            Expr::Exp(a) => a.const_value().filter(Zero::is_zero).map(|_| 0),
        }
    }

    /// Evaluates the tree with `x ↦ x` and `y ↦ y` in the series ring,
    /// truncated at `trunc`.
    pub fn eval_series(
        &self,
        y: &TruncatedSeries,
        trunc: usize,
    ) -> Result<TruncatedSeries, SeriesError> {
        let y = y.truncate(trunc);
        self.eval_series_inner(&y, trunc)
    }

    fn eval_series_inner(
        &self,
        y: &TruncatedSeries,
        trunc: usize,
    ) -> Result<TruncatedSeries, SeriesError> {
        Ok(match self {
            Expr::Const(c) => TruncatedSeries::constant(c.clone(), trunc),
            Expr::VarX => TruncatedSeries::identity(trunc),
            Expr::VarY => y.clone(),
            Expr::Add(a, b) => a
                .eval_series_inner(y, trunc)?
                .add(&b.eval_series_inner(y, trunc)?),
            Expr::Sub(a, b) => a
                .eval_series_inner(y, trunc)?
                .sub(&b.eval_series_inner(y, trunc)?),
            Expr::Mul(a, b) => a
                .eval_series_inner(y, trunc)?
                .mul(&b.eval_series_inner(y, trunc)?),
            Expr::Neg(a) => a.eval_series_inner(y, trunc)?.neg(),
            Expr::PowInt(a, p) => a.eval_series_inner(y, trunc)?.pow(*p),
            Expr::Exp(a) => a.eval_series_inner(y, trunc)?.exp()?,
            Expr::DivConst(a, c) => a.eval_series_inner(y, trunc)?.scale(&c.recip()),
        })
    }

    /// θ-expansion of `f(x, Σ_j θ^j y_j)` through `θ^order`, each
    /// θ-coefficient an `x`-series truncated at `trunc`. Missing `y_j`
    /// count as zero.
    pub fn eval_theta(
        &self,
        y: &[TruncatedSeries],
        order: usize,
        trunc: usize,
    ) -> Result<Vec<TruncatedSeries>, SeriesError> {
        let mut parts: Vec<TruncatedSeries> = y
            .iter()
            .take(order + 1)
            .map(|s| s.truncate(trunc))
            .collect();
        parts.resize(order + 1, TruncatedSeries::zero(trunc));
        let y = ThetaSeries(parts);
        Ok(self.eval_theta_inner(&y, order, trunc)?.0)
    }

    fn eval_theta_inner(
        &self,
        y: &ThetaSeries,
        order: usize,
        trunc: usize,
    ) -> Result<ThetaSeries, SeriesError> {
        Ok(match self {
            Expr::Const(c) => ThetaSeries::lift(TruncatedSeries::constant(c.clone(), trunc), order),
            Expr::VarX => ThetaSeries::lift(TruncatedSeries::identity(trunc), order),
            Expr::VarY => y.clone(),
            Expr::Add(a, b) => a
                .eval_theta_inner(y, order, trunc)?
                .add(&b.eval_theta_inner(y, order, trunc)?),
            Expr::Sub(a, b) => a
                .eval_theta_inner(y, order, trunc)?
                .sub(&b.eval_theta_inner(y, order, trunc)?),
            Expr::Mul(a, b) => a
                .eval_theta_inner(y, order, trunc)?
                .mul(&b.eval_theta_inner(y, order, trunc)?),
            Expr::Neg(a) => a.eval_theta_inner(y, order, trunc)?.scale(&int(-1)),
            Expr::PowInt(a, p) => a.eval_theta_inner(y, order, trunc)?.pow(*p),
            Expr::Exp(a) => a.eval_theta_inner(y, order, trunc)?.exp()?,
            Expr::DivConst(a, c) => a.eval_theta_inner(y, order, trunc)?.scale(&c.recip()),
        })
    }

    /// Floating-point value at `(x, y)`.
    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        match self {
            Expr::Const(c) => rational_to_f64(c),
            Expr::VarX => x,
            Expr::VarY => y,
            Expr::Add(a, b) => a.eval_f64(x, y) + b.eval_f64(x, y),
            Expr::Sub(a, b) => a.eval_f64(x, y) - b.eval_f64(x, y),
            Expr::Mul(a, b) => a.eval_f64(x, y) * b.eval_f64(x, y),
            Expr::Neg(a) => -a.eval_f64(x, y),
            Expr::PowInt(a, p) => a.eval_f64(x, y).powi((*p).min(i32::MAX as u32) as i32),
            Expr::Exp(a) => a.eval_f64(x, y).exp(),
            Expr::DivConst(a, c) => a.eval_f64(x, y) / rational_to_f64(c),
        }
    }
}

fn collect_terms<'a>(e: &'a Expr, negated: bool, out: &mut Vec<(bool, &'a Expr)>) {
    match e {
        Expr::Add(a, b) => {
            collect_terms(a, negated, out);
            collect_terms(b, negated, out);
        }
        Expr::Sub(a, b) => {
            collect_terms(a, negated, out);
            collect_terms(b, !negated, out);
        }
        Expr::Neg(a) => collect_terms(a, !negated, out),
        other => out.push((negated, other)),
    }
}

/// Element of the ring `Q[[x]][θ]/(θ^{order+1})`: entry `j` is the
/// coefficient of `θ^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaSeries(pub Vec<TruncatedSeries>);

impl ThetaSeries {
    fn lift(s: TruncatedSeries, order: usize) -> Self {
        let trunc = s.trunc();
        let mut v = vec![TruncatedSeries::zero(trunc); order + 1];
        v[0] = s;
        ThetaSeries(v)
    }

    fn order(&self) -> usize {
        self.0.len() - 1
    }

    fn add(&self, other: &Self) -> Self {
        ThetaSeries(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        ThetaSeries(self.0.iter().zip(&other.0).map(|(a, b)| a.sub(b)).collect())
    }

    fn scale(&self, c: &Rational) -> Self {
        ThetaSeries(self.0.iter().map(|a| a.scale(c)).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.order();
        let trunc = self.0[0].trunc().min(other.0[0].trunc());
        let mut out = vec![TruncatedSeries::zero(trunc); n + 1];
        for i in 0..=n {
            if self.0[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !other.0[j].is_zero() {
                    out[i + j] = out[i + j].add(&self.0[i].mul(&other.0[j]));
                }
            }
        }
        ThetaSeries(out)
    }

    fn pow(&self, p: u32) -> Self {
        let trunc = self.0[0].trunc();
        let mut result = ThetaSeries::lift(
            TruncatedSeries::constant(Rational::one(), trunc),
            self.order(),
        );
        let mut base = self.clone();
        let mut p = p;
        while p > 0 {
            if p & 1 == 1 {
                result = result.mul(&base);
            }
            p >>= 1;
            if p > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `exp(a₀(x)) · exp(Σ_{j≥1} θ^j a_j(x))`; the θ factor comes from
    /// `j·G_j = Σ_{i=1}^{j} i·a_i·G_{j−i}`.
    fn exp(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        let base = self.0[0].exp()?;
        let trunc = base.trunc();
        let mut g = vec![TruncatedSeries::zero(trunc); n + 1];
        g[0] = TruncatedSeries::constant(Rational::one(), trunc);
        for j in 1..=n {
            let mut acc = TruncatedSeries::zero(trunc);
            for i in 1..=j {
                if !self.0[i].is_zero() {
                    acc = acc.add(&self.0[i].mul(&g[j - i]).scale(&int(i as i64)));
                }
            }
            g[j] = acc.scale(&int(j as i64).recip());
        }
        Ok(ThetaSeries(g.iter().map(|gj| base.mul(gj)).collect()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(num_bigint::BigInt),
    X,
    Y,
    Exp,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // all-ASCII digits, so the slice is valid UTF-8 and parses
                let n = text[start..i].parse().expect("digit run");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let tok = match &text[start..i] {
                    "x" => Tok::X,
                    "y" => Tok::Y,
                    "exp" => Tok::Exp,
                    other => {
                        return Err(ParseError::new(
                            start,
                            format!("unknown identifier `{other}`"),
                        ))
                    }
                };
                out.push((start, tok));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(
                    start,
                    format!("unexpected character `{ch}`"),
                ));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    depth: usize,
}

/// Parses the `f(x, y)` expression language.
///
/// Precedence from loosest: `+ -`, `* /`, unary `-`, `^` (right
/// associative). `p/q` with integer `p` and `q` is a rational literal, and
/// a `-` directly before a literal folds into it unless the literal is the
/// base of `^`. Divisors and exponents must be constant; exponents must
/// be non-negative integers.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        depth: 0,
    };
    let e = p.sum()?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => Err(p.err("unexpected trailing input")),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.at + ahead).min(self.toks.len() - 1);
        &self.toks[i].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err(&self, message: &str) -> ParseError {
        ParseError::new(self.pos(), message)
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("expression nested too deeply"));
        }
        Ok(())
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::add(lhs, self.product()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::sub(lhs, self.product()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary(true)?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::mul(lhs, self.unary(false)?);
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let divisor = self.unary(false)?;
                    let c = divisor
                        .const_value()
                        .ok_or_else(|| ParseError::new(pos, "divisor must be a constant"))?;
                    lhs = Expr::div_const(lhs, c)
                        .ok_or_else(|| ParseError::new(pos, "division by zero"))?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    /// Unary minus. `fold` allows `p/q` to read as one literal; it is off
    /// for exponents, divisors, and right operands of `*`, where `/` must
    /// stay an operator of the enclosing product.
    fn unary(&mut self, fold: bool) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.enter()?;
            self.bump();
            let e = if self.literal_ahead(fold) {
                let c = self.literal(fold)?;
                Expr::Const(-c)
            } else {
                Expr::neg(self.unary(fold)?)
            };
            self.depth -= 1;
            return Ok(e);
        }
        self.power(fold)
    }

    /// Whether the upcoming tokens form a literal that is not a `^` base.
    fn literal_ahead(&self, fold: bool) -> bool {
        if !matches!(self.peek(), Tok::Int(_)) {
            return false;
        }
        let after = if fold
            && matches!(self.peek_at(1), Tok::Slash)
            && matches!(self.peek_at(2), Tok::Int(_))
        {
            3
        } else {
            1
        };
        !matches!(self.peek_at(after), Tok::Caret)
    }

    fn literal(&mut self, fold: bool) -> Result<Rational, ParseError> {
        let Tok::Int(n) = self.bump() else {
            return Err(self.err("expected a number"));
        };
        if fold && matches!(self.peek(), Tok::Slash) && matches!(self.peek_at(1), Tok::Int(_)) {
            let pos = self.toks[self.at + 1].0;
            self.bump();
            let Tok::Int(d) = self.bump() else {
                unreachable!()
            };
            if d.is_zero() {
                return Err(ParseError::new(pos, "division by zero"));
            }
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_integer(n))
    }

    fn power(&mut self, fold: bool) -> Result<Expr, ParseError> {
        let base = self.primary(fold)?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        self.enter()?;
        let pos = self.pos();
        let exponent = self.unary(false)?;
        self.depth -= 1;
        let value = exponent
            .const_value()
            .ok_or_else(|| ParseError::new(pos, "exponent must be a constant"))?;
        if !value.is_integer() || value.is_negative() {
            return Err(ParseError::new(
                pos,
                "exponent must be a non-negative integer",
            ));
        }
        let p = value
            .to_integer()
            .to_u32()
            .filter(|&p| p <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::new(pos, format!("exponent exceeds {MAX_EXPONENT}")))?;
        Ok(Expr::pow(base, p))
    }

    fn primary(&mut self, fold: bool) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(_) => {
                let fold = fold && self.literal_ahead(true);
                Ok(Expr::Const(self.literal(fold)?))
            }
            Tok::X => {
                self.bump();
                Ok(Expr::VarX)
            }
            Tok::Y => {
                self.bump();
                Ok(Expr::VarY)
            }
            Tok::Exp => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Err(self.err("expected `(` after exp"));
                }
                Ok(Expr::exp(self.group()?))
            }
            Tok::LParen => self.group(),
            Tok::End => Err(ParseError::new(pos, "unexpected end of input")),
            _ => Err(ParseError::new(pos, "expected a number, variable, or `(`")),
        }
    }

    fn group(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        self.bump();
        let e = self.sum()?;
        if *self.peek() != Tok::RParen {
            return Err(self.err("expected `)`"));
        }
        self.bump();
        self.depth -= 1;
        Ok(e)
    }
}

// Binding strength used by the formatter.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) | Expr::DivConst(..) => PRODUCT,
        Expr::Neg(_) => UNARY,
        Expr::Const(c) if !c.is_integer() => PRODUCT,
        Expr::Const(c) if c.is_negative() => UNARY,
        Expr::PowInt(..) => POWER,
        _ => ATOM,
    }
}

/// Canonical text for `e`; [`parse_expr`] reads it back to an equal tree.
pub fn format_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

fn write_wrapped(e: &Expr, wrap: bool, out: &mut String) {
    if wrap {
        out.push('(');
        write_expr(e, out);
        out.push(')');
    } else {
        write_expr(e, out);
    }
}

fn write_expr(e: &Expr, out: &mut String) {
    match e {
        Expr::Const(c) => out.push_str(&format_rational(c)),
        Expr::VarX => out.push('x'),
        Expr::VarY => out.push('y'),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_wrapped(a, level(a) < SUM, out);
            out.push_str(if matches!(e, Expr::Add(..)) {
                " + "
            } else {
                " - "
            });
            write_wrapped(b, level(b) <= SUM, out);
        }
        Expr::Mul(a, b) => {
            write_wrapped(a, level(a) < PRODUCT, out);
            out.push('*');
            write_wrapped(b, level(b) <= PRODUCT, out);
        }
        Expr::DivConst(a, c) => {
            // an integer literal on the left would fuse with `/` into a
            // rational literal
            write_wrapped(a, level(a) < PRODUCT || ends_in_int_literal(a), out);
            out.push('/');
            if c.is_integer() && !c.is_negative() {
                out.push_str(&format_rational(c));
            } else {
                out.push('(');
                out.push_str(&format_rational(c));
                out.push(')');
            }
        }
        Expr::Neg(a) => {
            out.push('-');
            let wrap = level(a) < UNARY || matches!(**a, Expr::Const(ref c) if !c.is_negative());
            write_wrapped(a, wrap, out);
        }
        Expr::PowInt(a, p) => {
            write_wrapped(a, level(a) <= POWER, out);
            out.push('^');
            out.push_str(&p.to_string());
        }
        Expr::Exp(a) => {
            out.push_str("exp(");
            write_expr(a, out);
            out.push(')');
        }
    }
}

fn ends_in_int_literal(e: &Expr) -> bool {
    match e {
        Expr::Const(c) => c.is_integer(),
        Expr::Neg(a) => {
            !matches!(**a, Expr::Const(ref c) if !c.is_negative()) && ends_in_int_literal(a)
        }
        _ => false,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_expr(self))
    }
}

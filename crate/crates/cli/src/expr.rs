//! Expression strings: a small grammar of sums, products, quotients and
//! powers over rational literals and named symbols, evaluated into the exact
//! domains of the core crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use schwarz_core::algebra::{CycNum, Field, MPoly, RamifiedFunction, RatFunc, Rational, Ring};

/// Error in an expression string; `column` is 1-based, in characters.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError {
        column,
        message: message.into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Number(Rational),
    Symbol(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

/// Syntax tree node; `column` points at the token that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub column: usize,
}

impl Expr {
    /// True when `name` occurs anywhere in the tree.
    pub fn mentions(&self, name: &str) -> bool {
        match &self.kind {
            ExprKind::Number(_) => false,
            ExprKind::Symbol(s) => s == name,
            ExprKind::Neg(a) => a.mentions(name),
            ExprKind::Binary(_, a, b) => a.mentions(name) || b.mentions(name),
        }
    }

    /// Every symbol name, in order of first appearance.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<String>) {
        match &self.kind {
            ExprKind::Number(_) => {}
            ExprKind::Symbol(s) => {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
            ExprKind::Neg(a) => a.collect_symbols(out),
            ExprKind::Binary(_, a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Rational),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(Token, usize)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((Token::Number(parse_decimal(&text, col)?), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Token::Ident(chars[start..i].iter().collect()), col));
        } else {
            let tok = match c {
                '+' | '-' | '/' | '^' => Token::Op(c),
                '−' => Token::Op('-'),
                '*' | '·' => {
                    if chars.get(i + 1) == Some(&'*') {
                        i += 1;
                        Token::Op('^')
                    } else {
                        Token::Op('*')
                    }
                }
                '(' => Token::LParen,
                ')' => Token::RParen,
                _ => return err(col, format!("unexpected character '{c}'")),
            };
            out.push((tok, col));
            i += 1;
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str, col: usize) -> Result<Rational, ExprError> {
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
        return err(col, format!("malformed number '{text}'"));
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits
        .parse()
        .map_err(|_| ExprError {
            column: col,
            message: format!("malformed number '{text}'"),
        })?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Ok(Rational::new(n, den))
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |&(_, c)| c)
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek() {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            let column = self.column();
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr {
                kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                column,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let (op, column) = match self.peek() {
                Some(Token::Op('*')) => (BinOp::Mul, self.column()),
                Some(Token::Op('/')) => (BinOp::Div, self.column()),
                // Juxtaposition such as `8z` or `2(z - 1)`.
                Some(Token::Ident(_) | Token::Number(_) | Token::LParen) => {
                    let column = self.column();
                    let rhs = self.unary()?;
                    lhs = Expr {
                        kind: ExprKind::Binary(BinOp::Mul, Box::new(lhs), Box::new(rhs)),
                        column,
                    };
                    continue;
                }
                _ => break,
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr {
                kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                column,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(Token::Op('-')) => {
                let column = self.column();
                self.pos += 1;
                let inner = self.unary()?;
                Ok(Expr {
                    kind: ExprKind::Neg(Box::new(inner)),
                    column,
                })
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if let Some(Token::Op('^')) = self.peek() {
            let column = self.column();
            self.pos += 1;
            // Right associative, and binds tighter than a leading minus.
            let exp = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Binary(BinOp::Pow, Box::new(base), Box::new(exp)),
                column,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let column = self.column();
        match self.tokens.get(self.pos).cloned() {
            Some((Token::Number(q), _)) => {
                self.pos += 1;
                Ok(Expr {
                    kind: ExprKind::Number(q),
                    column,
                })
            }
            Some((Token::Ident(s), _)) => {
                self.pos += 1;
                Ok(Expr {
                    kind: ExprKind::Symbol(s),
                    column,
                })
            }
            Some((Token::LParen, _)) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => err(self.column(), "expected ')'"),
                }
            }
            Some((tok, _)) => err(column, format!("unexpected {}", describe(&tok))),
            None => err(column, "unexpected end of expression"),
        }
    }
}

fn describe(tok: &Token) -> String {
    match tok {
        Token::Number(q) => format!("number {q}"),
        Token::Ident(s) => format!("symbol '{s}'"),
        Token::Op(c) => format!("'{c}'"),
        Token::LParen => "'('".into(),
        Token::RParen => "')'".into(),
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let tokens = tokenize(src)?;
    let end = src.chars().count() + 1;
    let mut p = Parser { tokens, pos: 0, end };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return err(p.column(), format!("unexpected {}", describe(&p.tokens[p.pos].0)));
    }
    Ok(e)
}

/// A target of evaluation.
pub trait Domain {
    type Value: Clone;
    fn number(&self, q: &Rational) -> Self::Value;
    fn symbol(&self, name: &str, column: usize) -> Result<Self::Value, ExprError>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value, column: usize) -> Result<Self::Value, ExprError>;
    fn pow(&self, a: &Self::Value, e: &Rational, column: usize) -> Result<Self::Value, ExprError>;
}

pub fn eval<D: Domain>(e: &Expr, d: &D) -> Result<D::Value, ExprError> {
    Ok(match &e.kind {
        ExprKind::Number(q) => d.number(q),
        ExprKind::Symbol(s) => d.symbol(s, e.column)?,
        ExprKind::Neg(a) => d.neg(&eval(a, d)?),
        ExprKind::Binary(op, a, b) => {
            if *op == BinOp::Pow {
                let exp = exponent(b)?;
                return d.pow(&eval(a, d)?, &exp, e.column);
            }
            let (x, y) = (eval(a, d)?, eval(b, d)?);
            match op {
                BinOp::Add => d.add(&x, &y),
                BinOp::Sub => d.sub(&x, &y),
                BinOp::Mul => d.mul(&x, &y),
                BinOp::Div => d.div(&x, &y, e.column)?,
                BinOp::Pow => unreachable!(),
            }
        }
    })
}

/// Exponents are rational constants.
fn exponent(e: &Expr) -> Result<Rational, ExprError> {
    eval(e, &RationalDomain).map_err(|mut x| {
        if x.message.starts_with("unknown symbol") {
            x.message = "exponents must be rational constants".into();
        }
        x
    })
}

/// Signed integer exponent, or an error at `column`.
fn integer_exponent(e: &Rational, column: usize) -> Result<i64, ExprError> {
    if !e.is_integer() {
        return err(column, format!("exponent {e} must be an integer here"));
    }
    e.to_integer()
        .to_i64()
        .filter(|k| k.unsigned_abs() <= u32::MAX as u64)
        .ok_or_else(|| ExprError {
            column,
            message: format!("exponent {e} is too large"),
        })
}

/// The real `d`-th root of `q`, when it is rational.
pub fn rational_root(q: &Rational, d: u32) -> Option<Rational> {
    if d == 1 {
        return Some(q.clone());
    }
    if q.is_negative() && d.is_multiple_of(2) {
        return None;
    }
    let num = q.numer().abs().nth_root(d);
    let den = q.denom().nth_root(d);
    if num.pow(d) != q.numer().abs() || den.pow(d) != *q.denom() {
        return None;
    }
    let r = Rational::new(num, den);
    Some(if q.is_negative() { -r } else { r })
}

/// `q^e` for rational `e`, on the real branch.
fn rational_power(q: &Rational, e: &Rational, column: usize) -> Result<Rational, ExprError> {
    let d = e.denom().to_u32().ok_or_else(|| ExprError {
        column,
        message: format!("exponent {e} is too large"),
    })?;
    let Some(root) = rational_root(q, d) else {
        let why = if q.is_negative() && d % 2 == 0 {
            "even root of a negative number"
        } else {
            "the root is not rational"
        };
        return err(column, format!("cannot raise {q} to {e}: {why}"));
    };
    let p = integer_exponent(&Rational::from_integer(e.numer().clone()), column)?;
    if p < 0 && Ring::is_zero(&root) {
        return err(column, "division by zero");
    }
    let base = if p < 0 { root.inv().unwrap() } else { root };
    Ok(Ring::pow(&base, p.unsigned_abs() as u32))
}

/// Rational constants only.
pub struct RationalDomain;

impl Domain for RationalDomain {
    type Value = Rational;
    fn number(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn symbol(&self, name: &str, column: usize) -> Result<Rational, ExprError> {
        err(column, format!("unknown symbol '{name}'"))
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn div(&self, a: &Rational, b: &Rational, column: usize) -> Result<Rational, ExprError> {
        match Field::div(a, b) {
            Some(q) => Ok(q),
            None => err(column, "division by zero"),
        }
    }
    fn pow(&self, a: &Rational, e: &Rational, column: usize) -> Result<Rational, ExprError> {
        rational_power(a, e, column)
    }
}

/// Polynomials over Q in named variables.
pub struct PolyDomain<'a> {
    pub vars: &'a [String],
}

impl Domain for PolyDomain<'_> {
    type Value = MPoly<Rational>;
    fn number(&self, q: &Rational) -> MPoly<Rational> {
        MPoly::constant(self.vars.len(), q.clone())
    }
    fn symbol(&self, name: &str, column: usize) -> Result<MPoly<Rational>, ExprError> {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => Ok(MPoly::var(self.vars.len(), i)),
            None => err(column, format!("unknown symbol '{name}'")),
        }
    }
    fn add(&self, a: &MPoly<Rational>, b: &MPoly<Rational>) -> MPoly<Rational> {
        a.add(b)
    }
    fn sub(&self, a: &MPoly<Rational>, b: &MPoly<Rational>) -> MPoly<Rational> {
        a.sub(b)
    }
    fn mul(&self, a: &MPoly<Rational>, b: &MPoly<Rational>) -> MPoly<Rational> {
        a.mul(b)
    }
    fn neg(&self, a: &MPoly<Rational>) -> MPoly<Rational> {
        a.neg()
    }
    fn div(&self, a: &MPoly<Rational>, b: &MPoly<Rational>, column: usize) -> Result<MPoly<Rational>, ExprError> {
        if b.is_zero() {
            return err(column, "division by zero");
        }
        match b.total_degree() {
            Some(0) => Ok(a.scale(&b.coeff(&vec![0; self.vars.len()]).inv().unwrap())),
            _ => err(column, "polynomials may only be divided by constants"),
        }
    }
    fn pow(&self, a: &MPoly<Rational>, e: &Rational, column: usize) -> Result<MPoly<Rational>, ExprError> {
        let k = integer_exponent(e, column)?;
        if k < 0 {
            return err(column, "polynomials take nonnegative integer exponents");
        }
        Ok(a.pow(k as u32))
    }
}

/// Cyclotomic numbers; the symbol `zeta_m` is a primitive `m`-th root of
/// unity `e^(2πi/m)`.
pub struct CycDomain;

fn zeta_conductor(name: &str) -> Option<u32> {
    let m: u32 = name.strip_prefix("zeta_")?.parse().ok()?;
    (m >= 1).then_some(m)
}

impl Domain for CycDomain {
    type Value = CycNum;
    fn number(&self, q: &Rational) -> CycNum {
        CycNum::rational(1, q)
    }
    fn symbol(&self, name: &str, column: usize) -> Result<CycNum, ExprError> {
        match zeta_conductor(name) {
            Some(m) => Ok(CycNum::zeta(m, 1)),
            None => err(column, format!("unknown symbol '{name}' (expected zeta_m)")),
        }
    }
    fn add(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a.add(b)
    }
    fn sub(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a.sub(b)
    }
    fn mul(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a.mul(b)
    }
    fn neg(&self, a: &CycNum) -> CycNum {
        a.neg()
    }
    fn div(&self, a: &CycNum, b: &CycNum, column: usize) -> Result<CycNum, ExprError> {
        match Field::div(a, b) {
            Some(q) => Ok(q),
            None => err(column, "division by zero"),
        }
    }
    fn pow(&self, a: &CycNum, e: &Rational, column: usize) -> Result<CycNum, ExprError> {
        let k = integer_exponent(e, column)?;
        let base = if k < 0 {
            match a.inv() {
                Some(i) => i,
                None => return err(column, "division by zero"),
            }
        } else {
            a.clone()
        };
        Ok(Ring::pow(&base, k.unsigned_abs() as u32))
    }
}

/// Scalars of pullback expressions: rational functions of `t`, where the
/// declared parameter is `t^q`.
pub type Scalar = RatFunc<Rational>;
/// Pullback values: ramified functions of `z` over [`Scalar`].
pub type Pullback = RamifiedFunction<Scalar>;

/// A declared parameter `name`, represented as `t^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameter {
    pub name: String,
    pub power: u32,
}

/// Functions of `z`, with at most one parameter.
pub struct FunctionDomain<'a> {
    pub variable: &'a str,
    pub parameter: Option<&'a Parameter>,
}

/// `c · t^k · z^(a/r)`, when `f` has that shape.
fn as_monomial(f: &Pullback) -> Option<(Rational, i64, Rational)> {
    let g = f.in_w();
    let single = |p: &[Rational]| -> Option<(usize, Rational)> {
        let mut it = p.iter().enumerate().filter(|(_, c)| !Ring::is_zero(*c));
        let (i, c) = it.next()?;
        it.next().is_none().then(|| (i, c.clone()))
    };
    let (a, c) = single_k(g.numer().coeffs())?;
    let (b, _) = single_k(g.denom().coeffs())?;
    let (i, c1) = single(c.numer().coeffs())?;
    let (j, _) = single(c.denom().coeffs())?;
    let z_exp = Rational::new((a as i64 - b as i64).into(), (f.ramification() as i64).into());
    Some((c1, i as i64 - j as i64, z_exp))
}

fn single_k(p: &[Scalar]) -> Option<(usize, Scalar)> {
    let mut it = p.iter().enumerate().filter(|(_, c)| !Ring::is_zero(*c));
    let (i, c) = it.next()?;
    it.next().is_none().then(|| (i, c.clone()))
}

fn t_power(k: i64) -> Scalar {
    let t = Scalar::x();
    if k >= 0 {
        Ring::pow(&t, k as u32)
    } else {
        Ring::pow(&t.inv().unwrap(), k.unsigned_abs() as u32)
    }
}

impl Domain for FunctionDomain<'_> {
    type Value = Pullback;
    fn number(&self, q: &Rational) -> Pullback {
        Pullback::from_rational(q)
    }
    fn symbol(&self, name: &str, column: usize) -> Result<Pullback, ExprError> {
        if name == self.variable {
            return Ok(Pullback::z());
        }
        match self.parameter {
            Some(p) if p.name == name => Ok(Pullback::from_z(RatFunc::constant(t_power(p.power as i64)))),
            _ => err(column, format!("unknown symbol '{name}'")),
        }
    }
    fn add(&self, a: &Pullback, b: &Pullback) -> Pullback {
        a.add(b)
    }
    fn sub(&self, a: &Pullback, b: &Pullback) -> Pullback {
        a.sub(b)
    }
    fn mul(&self, a: &Pullback, b: &Pullback) -> Pullback {
        a.mul(b)
    }
    fn neg(&self, a: &Pullback) -> Pullback {
        a.neg()
    }
    fn div(&self, a: &Pullback, b: &Pullback, column: usize) -> Result<Pullback, ExprError> {
        match Field::div(a, b) {
            Some(q) => Ok(q),
            None => err(column, "division by zero"),
        }
    }
    fn pow(&self, a: &Pullback, e: &Rational, column: usize) -> Result<Pullback, ExprError> {
        if e.is_integer() {
            let k = integer_exponent(e, column)?;
            let base = if k < 0 {
                match a.inv() {
                    Some(i) => i,
                    None => return err(column, "division by zero"),
                }
            } else {
                a.clone()
            };
            return Ok(Ring::pow(&base, k.unsigned_abs() as u32));
        }
        if a.is_zero() {
            return if e.is_negative() {
                err(column, "division by zero")
            } else {
                Ok(a.clone())
            };
        }
        let Some((c, k, z_exp)) = as_monomial(a) else {
            return err(column, "fractional powers need a monomial base such as 8*z or -mu");
        };
        let c = rational_power(&c, e, column)?;
        let tk = Rational::from_integer(k.into()) * e;
        if !tk.is_integer() {
            return err(column, "fractional power of the parameter is not representable");
        }
        let ze = z_exp * e;
        let (Some(p), Some(q)) = (ze.numer().to_i64(), ze.denom().to_u32()) else {
            return err(column, "exponent too large");
        };
        let coeff = Scalar::constant(c).mul(&t_power(tk.to_integer().to_i64().unwrap_or(0)));
        Ok(Pullback::power_of_z(coeff, p, q))
    }
}

/// Least `q` such that every fractional power applied to a subexpression
/// mentioning `name` has a denominator dividing `q`.
pub fn parameter_power(exprs: &[&Expr], name: &str) -> Result<u32, ExprError> {
    fn walk(e: &Expr, name: &str, q: &mut u32) -> Result<(), ExprError> {
        match &e.kind {
            ExprKind::Number(_) | ExprKind::Symbol(_) => Ok(()),
            ExprKind::Neg(a) => walk(a, name, q),
            ExprKind::Binary(op, a, b) => {
                if *op == BinOp::Pow && a.mentions(name) {
                    let exp = exponent(b)?;
                    let d = exp.denom().to_u32().unwrap_or(1);
                    *q = q.lcm(&d);
                }
                walk(a, name, q)?;
                walk(b, name, q)
            }
        }
    }
    let mut q = 1;
    for e in exprs {
        walk(e, name, &mut q)?;
    }
    Ok(q)
}

/// Maps a function with constant scalars down to rational coefficients.
pub fn to_rational(f: &Pullback) -> Option<RamifiedFunction<Rational>> {
    let g = f.in_w();
    let all_constant = g
        .numer()
        .coeffs()
        .iter()
        .chain(g.denom().coeffs())
        .all(|c| c.as_constant().is_some());
    if !all_constant {
        return None;
    }
    f.map(|c| c.as_constant().unwrap())
}

/// Substitutes a rational value for `t` in every scalar.
pub fn specialize(f: &Pullback, t: &Rational) -> Option<RamifiedFunction<Rational>> {
    let g = f.in_w();
    let ok = g
        .numer()
        .coeffs()
        .iter()
        .chain(g.denom().coeffs())
        .all(|c| c.eval(t).is_some());
    if !ok {
        return None;
    }
    let num = g.numer().map(|c| c.eval(t).unwrap());
    let den = g.denom().map(|c| c.eval(t).unwrap());
    Some(RamifiedFunction::new(f.ramification(), RatFunc::new(num, den)?))
}

/// Parses and evaluates a polynomial in `vars`.
pub fn polynomial(src: &str, vars: &[String]) -> Result<MPoly<Rational>, ExprError> {
    eval(&parse(src)?, &PolyDomain { vars })
}

/// Parses and evaluates a cyclotomic number.
pub fn cyclotomic(src: &str) -> Result<CycNum, ExprError> {
    eval(&parse(src)?, &CycDomain)
}

/// Parses and evaluates a rational constant.
pub fn rational(src: &str) -> Result<Rational, ExprError> {
    eval(&parse(src)?, &RationalDomain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use schwarz_core::algebra::{rat, UPoly};

    fn func(src: &str) -> Result<Pullback, ExprError> {
        eval(
            &parse(src)?,
            &FunctionDomain {
                variable: "z",
                parameter: None,
            },
        )
    }

    fn rz(f: &Pullback) -> RamifiedFunction<Rational> {
        to_rational(f).unwrap()
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(rational("2^3^2").unwrap(), rat(512, 1));
        assert_eq!(rational("-2^2").unwrap(), rat(-4, 1));
        assert_eq!(rational("1/2/4").unwrap(), rat(1, 8));
        assert_eq!(rational("2(3+4)").unwrap(), rat(14, 1));
        assert_eq!(rational("1.25").unwrap(), rat(5, 4));
        assert_eq!(rational("8^(2/3)").unwrap(), rat(4, 1));
        assert_eq!(rational("(-27)^(-1/3)").unwrap(), rat(-1, 3));
        assert_eq!(rational("2**-1").unwrap(), rat(1, 2));
    }

    #[test]
    fn errors_carry_columns() {
        let e = rational("1/0").unwrap_err();
        assert_eq!(e.column, 2);
        assert!(e.message.contains("division by zero"));
        assert_eq!(parse("1 + * 2").unwrap_err().column, 5);
        assert_eq!(parse("(z").unwrap_err().column, 3);
        assert_eq!(rational("(-4)^(1/2)").unwrap_err().column, 5);
        assert!(func("(z+1)^(1/2)").is_err());
        assert!(func("y").is_err());
    }

    #[test]
    fn ramified_monomials() {
        let f = rz(&func("8*z^(3/7)").unwrap());
        assert_eq!(f.ramification(), 7);
        assert_eq!(f, RamifiedFunction::power_of_z(rat(8, 1), 3, 7));
        let g = rz(&func("z^(1/7)(5z-128)").unwrap());
        assert_eq!(g.ramification(), 7);
        let h = rz(&func("-12/z^9").unwrap());
        assert_eq!(h, RamifiedFunction::power_of_z(rat(-12, 1), -9, 1));
        let k = rz(&func("(8z)^(1/3)").unwrap());
        assert_eq!(k, RamifiedFunction::power_of_z(rat(2, 1), 1, 3));
    }

    #[test]
    fn parameter_roots_take_the_real_branch() {
        let p = Parameter {
            name: "mu".into(),
            power: 9,
        };
        let src = ["(-mu)^(-1/9)", "(-mu)^(1/3)", "(-mu)^(-1/9)*(z+88/3)"];
        let exprs: Vec<Expr> = src.iter().map(|s| parse(s).unwrap()).collect();
        let refs: Vec<&Expr> = exprs.iter().collect();
        assert_eq!(parameter_power(&refs, "mu").unwrap(), 9);
        let d = FunctionDomain {
            variable: "z",
            parameter: Some(&p),
        };
        let f4 = eval(&exprs[0], &d).unwrap();
        let minus_t_inv = Scalar::x().neg().inv().unwrap();
        assert_eq!(f4, Pullback::from_z(RatFunc::constant(minus_t_inv)));
        let f6 = eval(&exprs[1], &d).unwrap();
        assert_eq!(f6, Pullback::from_z(RatFunc::constant(Ring::pow(&Scalar::x().neg(), 3))));
        assert!(to_rational(&f6).is_none());
        let at_one = specialize(&eval(&exprs[2], &d).unwrap(), &rat(1, 1)).unwrap();
        let expected = RatFunc::from_poly(UPoly::from_coeffs(vec![rat(-88, 3), rat(-1, 1)]));
        assert_eq!(at_one, RamifiedFunction::from_z(expected));
    }

    #[test]
    fn polynomials_and_cyclotomics() {
        let vars: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        let f = polynomial("x1^3 x2 + x2^3*x3 + x3^3*x1", &vars).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert!(polynomial("x1/x2", &vars).is_err());
        let z = cyclotomic("zeta_7^7").unwrap();
        assert!(z.is_one());
        let i = cyclotomic("zeta_4").unwrap();
        assert_eq!(i.mul(&i), CycNum::rational(1, &rat(-1, 1)));
        assert_eq!(cyclotomic("1/(zeta_3 - zeta_3)").unwrap_err().message, "division by zero");
    }
}

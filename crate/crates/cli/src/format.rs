//! Printers that emit strings in the expression grammar, so every printed
//! value parses back to itself.

use num_traits::Signed;
use schwarz_core::algebra::{CycNum, MPoly, RamifiedFunction, RatFunc, Rational, Ring, UPoly};

use crate::expr::{Parameter, Pullback, Scalar};

pub fn rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Joins signed terms as `a + b - c`.
fn join(terms: Vec<String>) -> String {
    let mut out = String::new();
    for t in terms {
        if out.is_empty() {
            out = t;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// `c * m` with the usual abbreviations; an empty monomial means 1.
fn term(c: &Rational, mono: &str) -> String {
    if mono.is_empty() {
        return rational(c);
    }
    if c.is_one() {
        mono.to_string()
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{}*{mono}", rational(c))
    }
}

fn power(var: &str, e: &Rational) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        var.to_string()
    } else if e.is_integer() && e.is_positive() {
        format!("{var}^{}", e.numer())
    } else {
        format!("{var}^({})", rational(e))
    }
}

pub fn upoly(p: &UPoly<Rational>, var: &str) -> String {
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| term(c, &power(var, &Rational::from_integer(k.into()))))
        .collect();
    join(terms)
}

pub fn mpoly(p: &MPoly<Rational>, names: &[String]) -> String {
    let terms = p
        .terms()
        .rev()
        .map(|(m, c)| {
            let mono: Vec<String> = m
                .exps()
                .iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| power(v, &Rational::from_integer((*e).into())))
                .collect();
            term(c, &mono.join("*"))
        })
        .collect();
    join(terms)
}

pub fn cyclotomic(c: &CycNum) -> String {
    let m = c.conductor();
    let var = format!("zeta_{m}");
    let terms = c
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, q)| !q.is_zero())
        .map(|(k, q)| term(q, &power(&var, &Rational::from_integer(k.into()))))
        .collect();
    join(terms)
}

/// A scalar `N(t)/D(t)` written in the parameter, `t = name^(1/power)`.
pub fn scalar(s: &Scalar, param: Option<&Parameter>) -> String {
    if let Some(c) = s.as_constant() {
        return rational(&c);
    }
    let Some(p) = param else {
        return format!("({})/({})", upoly(s.numer(), "t"), upoly(s.denom(), "t"));
    };
    let in_param = |poly: &UPoly<Rational>| {
        let terms = poly
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let e = Rational::new((k as i64).into(), (p.power as i64).into());
                term(c, &power(&p.name, &e))
            })
            .collect();
        join(terms)
    };
    if s.denom().degree() == Some(0) {
        format!("({})", in_param(s.numer()))
    } else {
        format!("({})/({})", in_param(s.numer()), in_param(s.denom()))
    }
}

/// Polynomial in `z^(1/r)` with scalar coefficients.
fn ramified_poly(p: &UPoly<Scalar>, r: u32, param: Option<&Parameter>) -> String {
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let mono = power("z", &Rational::new((k as i64).into(), (r as i64).into()));
            match c.as_constant() {
                Some(q) => term(&q, &mono),
                None if mono.is_empty() => scalar(c, param),
                None => format!("{}*{mono}", scalar(c, param)),
            }
        })
        .collect();
    join(terms)
}

/// A pullback as an expression in `z`.
pub fn pullback(f: &Pullback, param: Option<&Parameter>) -> String {
    let g = f.in_w();
    let num = ramified_poly(g.numer(), f.ramification(), param);
    if g.denom().degree() == Some(0) {
        return num;
    }
    format!("({num})/({})", ramified_poly(g.denom(), f.ramification(), param))
}

/// A rational-coefficient function, lifted to scalars for printing.
pub fn ramified(f: &RamifiedFunction<Rational>) -> String {
    let lifted = f
        .map(|c| RatFunc::constant(c.clone()))
        .expect("constant embedding");
    pullback(&lifted, None)
}

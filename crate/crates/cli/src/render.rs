//! Plain-text, LaTeX and JSON forms of a constructed equation.

use num_traits::Signed;
use schwarz_core::algebra::{integer_coeffs, rational_roots, Field, RamifiedFunction, RatFunc, Rational, Ring, UPoly};
use schwarz_core::builder::OdeResult;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::expr::{Parameter, Scalar};
use crate::format;

/// An equation with rational coefficients, or with coefficients depending
/// on one parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum Equation {
    Rational(OdeResult<Rational>),
    Parametric(OdeResult<Scalar>, Parameter),
}

impl Equation {
    pub fn order(&self) -> usize {
        match self {
            Equation::Rational(o) => o.order(),
            Equation::Parametric(o, _) => o.order(),
        }
    }

    pub fn descends_to_z(&self) -> bool {
        match self {
            Equation::Rational(o) => o.descends_to_z(),
            Equation::Parametric(o, _) => o.descends_to_z(),
        }
    }
}

/// A rational function `scale · N / ∏ F_i^{e_i}` with `N` and every `F_i`
/// primitive integer polynomials with positive leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Factored {
    pub scale: Rational,
    pub numerator: UPoly<Rational>,
    pub factors: Vec<(UPoly<Rational>, u32)>,
}

fn integer_poly(p: &UPoly<Rational>) -> UPoly<Rational> {
    UPoly::from_coeffs(integer_coeffs(p).into_iter().map(Rational::from_integer).collect())
}

/// Squarefree decomposition of a monic polynomial.
fn yun(p: &UPoly<Rational>) -> Vec<(UPoly<Rational>, u32)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let b = p.gcd(&dp);
    let mut c = p.divrem(&b).unwrap().0;
    let mut d = dp.divrem(&b).unwrap().0.sub(&c.derivative());
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        c = c.divrem(&a).unwrap().0;
        d = d.divrem(&a).unwrap().0.sub(&c.derivative());
        i += 1;
    }
    out
}

/// Splits off the rational roots of the denominator as linear factors.
pub fn factor(f: &RatFunc<Rational>) -> Factored {
    let num = f.numer();
    if num.is_zero() {
        return Factored {
            scale: Rational::zero(),
            numerator: UPoly::one(),
            factors: Vec::new(),
        };
    }
    let n_int = integer_poly(num);
    let mut scale = num.lead().unwrap() / n_int.lead().unwrap();
    let mut rest = f.denom().clone();
    let mut factors = Vec::new();
    for (root, m) in rational_roots(&rest) {
        let lin = UPoly::from_coeffs(vec![-root.clone(), Rational::one()]);
        rest = rest.divrem(&lin.pow(m)).unwrap().0;
        let q = Rational::from_integer(root.denom().clone());
        let lin_int = vec![Rational::from_integer(-root.numer()), q.clone()];
        factors.push((UPoly::from_coeffs(lin_int), m));
        scale *= Ring::pow(&q, m);
    }
    for (g, e) in yun(&rest) {
        let g_int = integer_poly(&g);
        scale *= Ring::pow(g_int.lead().unwrap(), e);
        factors.push((g_int, e));
    }
    Factored {
        scale,
        numerator: n_int,
        factors,
    }
}

impl Factored {
    pub fn value(&self) -> RatFunc<Rational> {
        let den = self
            .factors
            .iter()
            .fold(UPoly::one(), |acc: UPoly<Rational>, (f, e)| acc.mul(&f.pow(*e)));
        RatFunc::new(self.numerator.mul_scalar(&self.scale), den).unwrap()
    }

    fn text(&self) -> String {
        if self.scale.is_zero() {
            return "0".into();
        }
        let num = format::upoly(&self.numerator, "z");
        let num_is_one = self.numerator.is_one();
        let den: Vec<String> = self
            .factors
            .iter()
            .map(|(f, e)| {
                let base = if f.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                    format!("({})", format::upoly(f, "z"))
                } else {
                    format::upoly(f, "z")
                };
                if *e > 1 {
                    format!("{base}^{e}")
                } else {
                    base
                }
            })
            .collect();
        let s = &self.scale;
        let den = match den.as_slice() {
            [] => String::new(),
            [single] => single.clone(),
            _ => format!("({})", den.join("*")),
        };
        let frac = match (num_is_one, den.is_empty()) {
            (true, true) => return format::rational(s),
            (true, false) if s.is_integer() => return format!("{}/{den}", s.numer()),
            (true, false) => return format!("({})/{den}", format::rational(s)),
            (false, true) => format!("({num})"),
            (false, false) => format!("({num})/{den}"),
        };
        if s.is_one() {
            frac
        } else if (-s).is_one() {
            format!("-{frac}")
        } else if s.is_integer() {
            format!("{}*{frac}", format::rational(s))
        } else if s.is_negative() {
            format!("-({})*{frac}", format::rational(&-s))
        } else {
            format!("({})*{frac}", format::rational(s))
        }
    }

    fn latex(&self) -> String {
        if self.scale.is_zero() {
            return "0".into();
        }
        let s = self.scale.abs();
        let sign = if self.scale.is_negative() { "-" } else { "" };
        let scale = if s.is_one() {
            String::new()
        } else if s.is_integer() {
            s.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", s.numer(), s.denom())
        };
        let single = self.factors.len() == 1 && self.factors[0].1 == 1;
        let den: String = self
            .factors
            .iter()
            .map(|(f, e)| {
                let body = latex_poly(f);
                let base = if terms(f) > 1 && !single {
                    format!("({body})")
                } else {
                    body
                };
                if *e > 1 {
                    format!("{base}^{e}")
                } else {
                    base
                }
            })
            .collect();
        let num = latex_poly(&self.numerator);
        let body = if den.is_empty() {
            if self.numerator.is_one() {
                String::new()
            } else if terms(&self.numerator) > 1 && !scale.is_empty() {
                format!("\\left({num}\\right)")
            } else {
                num
            }
        } else {
            format!("\\frac{{{num}}}{{{den}}}")
        };
        if body.is_empty() && scale.is_empty() {
            return format!("{sign}1");
        }
        format!("{sign}{scale}{body}")
    }
}

fn terms<K: Ring>(p: &UPoly<K>) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

/// Integer-coefficient polynomial in `z` as LaTeX, e.g. `2592z^2-2963z+560`.
fn latex_poly(p: &UPoly<Rational>) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let a = c.abs();
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let coef = if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
        };
        match k {
            0 => out.push_str(&coef),
            _ => {
                if !a.is_one() {
                    out.push_str(&coef);
                }
                out.push('z');
                if k > 1 {
                    out.push('^');
                    out.push_str(&braced(k));
                }
            }
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn braced(k: usize) -> String {
    if k < 10 {
        k.to_string()
    } else {
        format!("{{{k}}}")
    }
}

fn derivative_text(k: usize) -> String {
    match k {
        0 => "y".into(),
        1..=3 => format!("y{}", "'".repeat(k)),
        _ => format!("y^({k})"),
    }
}

fn derivative_latex(k: usize) -> String {
    match k {
        0 => "y".into(),
        1 => "\\left(\\frac{d}{dz}\\right)y".into(),
        _ => format!("\\left(\\frac{{d}}{{dz}}\\right)^{}y", braced(k)),
    }
}

fn coefficient_text_rational(c: &RamifiedFunction<Rational>) -> String {
    match c.in_z() {
        Some(f) => factor(f).text(),
        None => format::ramified(c),
    }
}

fn coefficient_text_parametric(c: &RamifiedFunction<Scalar>, p: &Parameter) -> String {
    format::pullback(c, Some(p))
}

/// `y''' + c2*y'' + c1*y' + c0*y = 0` followed by one line per coefficient.
pub fn text(eq: &Equation) -> String {
    let n = eq.order();
    let coeff: Vec<String> = (0..n)
        .map(|i| match eq {
            Equation::Rational(o) => coefficient_text_rational(o.coeff(i)),
            Equation::Parametric(o, p) => coefficient_text_parametric(o.coeff(i), p),
        })
        .collect();
    let mut head = derivative_text(n);
    for i in (0..n).rev() {
        if coeff[i] != "0" {
            head.push_str(&format!(" + c{i}*{}", derivative_text(i)));
        }
    }
    let mut out = format!("{head} = 0\n");
    for i in (0..n).rev() {
        out.push_str(&format!("  c{i} = {}\n", coeff[i]));
    }
    if let Equation::Parametric(_, p) = eq {
        out.push_str(&format!("  (coefficients depend on {})\n", p.name));
    }
    out
}

fn latex_scalar(s: &Scalar, p: &Parameter) -> String {
    let poly = |q: &UPoly<Rational>| {
        let mut out = String::new();
        for (k, c) in q.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let coef = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            let e = Rational::new((k as i64).into(), (p.power as i64).into());
            let name = if p.name == "mu" { "\\mu".to_string() } else { p.name.clone() };
            let mono = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                name
            } else if e.is_integer() {
                format!("{name}^{{{}}}", e.numer())
            } else {
                format!("{name}^{{{}/{}}}", e.numer(), e.denom())
            };
            if mono.is_empty() || !a.is_one() {
                out.push_str(&coef);
            }
            out.push_str(&mono);
        }
        out
    };
    if s.denom().degree() == Some(0) {
        poly(s.numer())
    } else {
        format!("\\frac{{{}}}{{{}}}", poly(s.numer()), poly(s.denom()))
    }
}

fn latex_parametric(c: &RamifiedFunction<Scalar>, p: &Parameter) -> String {
    let r = c.ramification();
    let poly = |q: &UPoly<Scalar>| {
        let mut parts = Vec::new();
        for (k, s) in q.coeffs().iter().enumerate().rev() {
            if s.is_zero() {
                continue;
            }
            let e = Rational::new((k as i64).into(), (r as i64).into());
            let mono = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                "z".into()
            } else {
                format!("z^{{{}}}", format::rational(&e))
            };
            let coef = match s.as_constant() {
                Some(q) if q.is_one() && !mono.is_empty() => String::new(),
                _ => format!("\\left({}\\right)", latex_scalar(s, p)),
            };
            parts.push(format!("{coef}{mono}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    };
    let f = c.in_w();
    if f.denom().degree() == Some(0) {
        format!("\\left({}\\right)", poly(f.numer()))
    } else {
        format!("\\frac{{{}}}{{{}}}", poly(f.numer()), poly(f.denom()))
    }
}

/// `0 = (d/dz)^n y + ...` in the layout of the classical tables.
pub fn latex(eq: &Equation) -> String {
    let n = eq.order();
    let mut out = format!("0 = {}", derivative_latex(n));
    for i in (0..n).rev() {
        let c = match eq {
            Equation::Rational(o) => match o.coeff(i).in_z() {
                Some(f) => factor(f).latex(),
                None => {
                    let lifted = o.coeff(i).map(|q| RatFunc::constant(q.clone())).unwrap();
                    let p = Parameter {
                        name: "t".into(),
                        power: 1,
                    };
                    latex_parametric(&lifted, &p)
                }
            },
            Equation::Parametric(o, p) => latex_parametric(o.coeff(i), p),
        };
        if c == "0" {
            continue;
        }
        if !c.starts_with('-') {
            out.push('+');
        }
        if c == "1" {
            out.push_str(&derivative_latex(i));
        } else if c == "-1" {
            out.push('-');
            out.push_str(&derivative_latex(i));
        } else {
            out.push_str(&c);
            out.push_str(&derivative_latex(i));
        }
    }
    out
}

/// Errors when reading an equation back from JSON.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("malformed equation JSON: {0}")]
pub struct JsonError(pub String);

fn bad<T>(msg: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError(msg.into()))
}

fn rational_json(q: &Rational) -> Value {
    json!([q.numer().to_string(), q.denom().to_string()])
}

fn rational_from_json(v: &Value) -> Result<Rational, JsonError> {
    let pair = v.as_array().filter(|a| a.len() == 2);
    let Some(pair) = pair else {
        return bad("a rational must be a [numerator, denominator] pair of strings");
    };
    let parse = |x: &Value| -> Result<num_bigint::BigInt, JsonError> {
        x.as_str()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| JsonError(format!("not an integer string: {x}")))
    };
    let (n, d) = (parse(&pair[0])?, parse(&pair[1])?);
    if num_traits::Zero::is_zero(&d) {
        return bad("zero denominator");
    }
    Ok(Rational::new(n, d))
}

/// Coefficient fields that have an exact JSON form.
pub trait JsonScalar: Field {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, JsonError>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        rational_json(self)
    }
    fn from_json(v: &Value) -> Result<Self, JsonError> {
        rational_from_json(v)
    }
}

impl JsonScalar for Scalar {
    fn to_json(&self) -> Value {
        json!({
            "numerator": poly_json(self.numer()),
            "denominator": poly_json(self.denom()),
        })
    }
    fn from_json(v: &Value) -> Result<Self, JsonError> {
        let num = poly_from_json::<Rational>(&v["numerator"])?;
        let den = poly_from_json::<Rational>(&v["denominator"])?;
        match RatFunc::new(num, den) {
            Some(f) => Ok(f),
            None => bad("zero denominator"),
        }
    }
}

/// `[[exponent, coefficient], ...]` for the nonzero terms, ascending.
fn poly_json<K: JsonScalar>(p: &UPoly<K>) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| json!([k, c.to_json()]))
            .collect(),
    )
}

fn poly_from_json<K: JsonScalar>(v: &Value) -> Result<UPoly<K>, JsonError> {
    let Some(terms) = v.as_array() else {
        return bad("a polynomial must be a list of [exponent, coefficient] terms");
    };
    let mut coeffs: Vec<K> = Vec::new();
    let mut last: Option<usize> = None;
    for t in terms {
        let (Some(k), Some(c)) = (t.get(0).and_then(Value::as_u64), t.get(1)) else {
            return bad(format!("malformed term {t}"));
        };
        let k = k as usize;
        if last.is_some_and(|l| k <= l) {
            return bad("terms must be listed by increasing exponent");
        }
        last = Some(k);
        if coeffs.len() <= k {
            coeffs.resize(k + 1, K::zero());
        }
        coeffs[k] = K::from_json(c)?;
    }
    Ok(UPoly::from_coeffs(coeffs))
}

fn function_json<K: JsonScalar>(f: &RamifiedFunction<K>) -> Value {
    json!({
        "ramification": f.ramification(),
        "numerator": poly_json(f.in_w().numer()),
        "denominator": poly_json(f.in_w().denom()),
    })
}

fn function_from_json<K: JsonScalar>(v: &Value) -> Result<RamifiedFunction<K>, JsonError> {
    let r = v["ramification"]
        .as_u64()
        .filter(|&r| r >= 1 && r <= u32::MAX as u64)
        .ok_or_else(|| JsonError("ramification must be a positive integer".into()))?;
    let num = poly_from_json(&v["numerator"])?;
    let den = poly_from_json(&v["denominator"])?;
    match RatFunc::new(num, den) {
        Some(f) => Ok(RamifiedFunction::new(r as u32, f)),
        None => bad("zero denominator"),
    }
}

/// Problem data carried alongside an equation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub names: Vec<String>,
    pub degrees: Vec<u32>,
    pub primary: Vec<usize>,
    pub pullbacks: Vec<Option<String>>,
    pub strategy: String,
    pub m: u32,
    pub genus: Option<u32>,
    pub group_order: Option<u64>,
}

pub const FORMAT: &str = "schwarz-equation/1";

/// The JSON document for an equation: coefficients `c_0, ..., c_{n-1}` of
/// `y^(n) + Σ c_i y^(i) = 0`, each `N(w)/D(w)` with `z = w^r`.
pub fn to_json(eq: &Equation, meta: &Metadata) -> Value {
    let (coefficients, parameter) = match eq {
        Equation::Rational(o) => (o.coeffs().iter().map(function_json).collect::<Vec<_>>(), Value::Null),
        Equation::Parametric(o, p) => (
            o.coeffs().iter().map(function_json).collect(),
            json!({"name": p.name, "power": p.power}),
        ),
    };
    json!({
        "format": FORMAT,
        "order": eq.order(),
        "variable": "z",
        "parameter": parameter,
        "coefficients": coefficients,
        "metadata": meta,
    })
}

pub fn from_json(v: &Value) -> Result<(Equation, Metadata), JsonError> {
    if v["format"].as_str() != Some(FORMAT) {
        return bad(format!("expected format \"{FORMAT}\""));
    }
    let Some(coeffs) = v["coefficients"].as_array() else {
        return bad("missing coefficient list");
    };
    if v["order"].as_u64() != Some(coeffs.len() as u64) {
        return bad("order does not match the coefficient count");
    }
    let meta: Metadata = match v.get("metadata") {
        Some(m) if !m.is_null() => serde_json::from_value(m.clone()).map_err(|e| JsonError(e.to_string()))?,
        _ => Metadata::default(),
    };
    let eq = if v["parameter"].is_null() {
        let cs = coeffs.iter().map(function_from_json::<Rational>).collect::<Result<_, _>>()?;
        Equation::Rational(OdeResult::new(cs))
    } else {
        let p = &v["parameter"];
        let (Some(name), Some(power)) = (p["name"].as_str(), p["power"].as_u64()) else {
            return bad("parameter needs a name and a power");
        };
        let param = Parameter {
            name: name.to_string(),
            power: power as u32,
        };
        let cs = coeffs.iter().map(function_from_json::<Scalar>).collect::<Result<_, _>>()?;
        Equation::Parametric(OdeResult::new(cs), param)
    };
    Ok((eq, meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use schwarz_core::algebra::rat;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc<Rational> {
        let p = |v: &[i64]| UPoly::from_coeffs(v.iter().map(|&c| rat(c, 1)).collect());
        RatFunc::new(p(num), p(den)).unwrap()
    }

    fn hurwitz_like() -> Equation {
        // (7z-4)/(z(z-1)), (2592z^2-2963z+560)/(252 z^2(z-1)^2), (57024z-40805)/(24696 z^2 (z-1)^2)
        let c2 = rf(&[-4, 7], &[0, -1, 1]);
        let c1 = rf(&[560, -2963, 2592], &[0, 0, 252, -504, 252]);
        let c0 = rf(&[-40805, 57024], &[0, 0, 24696, -49392, 24696]);
        Equation::Rational(OdeResult::new(
            [c0, c1, c2].into_iter().map(RamifiedFunction::from_z).collect(),
        ))
    }

    #[test]
    fn factored_forms() {
        let f = factor(&rf(&[560, -2963, 2592], &[0, 0, 252, -504, 252]));
        assert_eq!(f.scale, rat(1, 252));
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.value(), rf(&[560, -2963, 2592], &[0, 0, 252, -504, 252]));
        // -6/(2z^2 - 3z + 1) = -3 / ((z - 1)(2z - 1)) after the monic normalization.
        let g = factor(&rf(&[-6], &[1, -3, 2]));
        assert_eq!(g.value(), rf(&[-6], &[1, -3, 2]));
        assert_eq!(g.text(), "-6/((2*z - 1)*(z - 1))");
        let h = factor(&rf(&[1, 0, 1], &[-2, 0, 1]));
        assert_eq!(h.text(), "(z^2 + 1)/(z^2 - 2)");
    }

    #[test]
    fn latex_matches_the_classical_layout() {
        let expected = "0 = \\left(\\frac{d}{dz}\\right)^3y+\\frac{7z-4}{z(z-1)}\\left(\\frac{d}{dz}\\right)^2y\
+\\frac{1}{252}\\frac{2592z^2-2963z+560}{z^2(z-1)^2}\\left(\\frac{d}{dz}\\right)y\
+\\frac{1}{24696}\\frac{57024z-40805}{z^2(z-1)^2}y";
        assert_eq!(latex(&hurwitz_like()), expected);
    }

    #[test]
    fn text_parses_back() {
        let t = text(&hurwitz_like());
        assert!(t.starts_with("y''' + c2*y'' + c1*y' + c0*y = 0"));
        let line = t.lines().find(|l| l.trim_start().starts_with("c1 =")).unwrap();
        let src = line.split_once('=').unwrap().1;
        let d = crate::expr::FunctionDomain {
            variable: "z",
            parameter: None,
        };
        let f = crate::expr::eval(&crate::expr::parse(src).unwrap(), &d).unwrap();
        let Equation::Rational(o) = hurwitz_like() else { unreachable!() };
        assert_eq!(crate::expr::to_rational(&f).unwrap(), o.coeff(1).clone());
    }

    #[test]
    fn json_round_trips() {
        let eq = hurwitz_like();
        let meta = Metadata {
            m: 1,
            group_order: Some(168),
            ..Metadata::default()
        };
        let v = to_json(&eq, &meta);
        let text = serde_json::to_string(&v).unwrap();
        assert!(!text.contains('.'), "no floating point in symbolic output");
        let (back, m2) = from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, eq);
        assert_eq!(m2, meta);
    }
}

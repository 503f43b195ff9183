use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{rational_roots, Field, RatFunc, Rational, Ring, UPoly};
use crate::builder::OdeResult;
use crate::error::{Error, Result};

/// A point of the base line, or a class of conjugate algebraic points.
#[derive(Clone, Debug, PartialEq)]
pub enum Location {
    Finite(Rational),
    /// All roots of a monic squarefree polynomial without rational roots.
    /// Every root carries the same local data.
    Conjugates(UPoly<Rational>),
    Infinity,
}

impl Location {
    /// Number of points of the base line represented.
    pub fn count(&self) -> usize {
        match self {
            Location::Conjugates(q) => q.degree().unwrap_or(0),
            _ => 1,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Finite(a) => write!(f, "{a}"),
            Location::Conjugates(q) => write!(f, "roots of {}", format_upoly(q, "z")),
            Location::Infinity => f.write_str("infinity"),
        }
    }
}

/// Plain-text rendering such as `z^2 - 3/2*z + 1`.
pub fn format_upoly(p: &UPoly<Rational>, var: &str) -> String {
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &<Rational as Ring>::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs == <Rational as Ring>::one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint {
    pub location: Location,
}

/// Coefficients `c_0..c_{n-1}` as rational functions of `z`.
pub(crate) fn z_coefficients(ode: &OdeResult<Rational>) -> Result<Vec<RatFunc<Rational>>> {
    ode.coeffs()
        .iter()
        .map(|c| {
            c.in_z().cloned().ok_or_else(|| {
                Error::Scope("the coefficients do not descend to rational functions of z".into())
            })
        })
        .collect()
}

/// Squarefree decomposition `p = Π s_i^i` (Yun), as `(s_i, i)` with
/// nonconstant `s_i`.
fn squarefree_decomposition(p: &UPoly<Rational>) -> Vec<(UPoly<Rational>, u32)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.divrem(&a0).unwrap().0;
    let mut c = dp.divrem(&a0).unwrap().0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        b = b.divrem(&a).unwrap().0;
        c = d.divrem(&a).unwrap().0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Refines a list of pairwise coprime factors so that each is either a
/// divisor of `s` or coprime to it.
fn refine(classes: Vec<UPoly<Rational>>, s: &UPoly<Rational>) -> Vec<UPoly<Rational>> {
    let mut out = Vec::new();
    for c in classes {
        let g = c.gcd(s);
        if g.degree().unwrap_or(0) == 0 || g.degree() == c.degree() {
            out.push(c);
        } else {
            out.push(c.divrem(&g).unwrap().0.monic());
            out.push(g);
        }
    }
    out
}

fn finite_locations(coeffs: &[RatFunc<Rational>]) -> Vec<Location> {
    let mut all = UPoly::one();
    for c in coeffs {
        let d = c.denom();
        all = all.mul(&d.divrem(&all.gcd(d)).unwrap().0);
    }
    let mut classes = alloc::vec![all.squarefree()];
    classes.retain(|c| c.degree().unwrap_or(0) > 0);
    for c in coeffs {
        for (s, _) in squarefree_decomposition(c.denom()) {
            classes = refine(classes, &s);
        }
    }
    let mut points = Vec::new();
    let mut rest = Vec::new();
    for class in classes {
        let mut q = class;
        for (r, _) in rational_roots(&q) {
            points.push(r.clone());
            let lin = UPoly::from_coeffs(alloc::vec![-r, <Rational as Ring>::one()]);
            q = q.divrem(&lin).unwrap().0;
        }
        if q.degree().unwrap_or(0) > 0 {
            rest.push(q.monic());
        }
    }
    points.sort();
    let mut out: Vec<Location> = points.into_iter().map(Location::Finite).collect();
    rest.sort_by_key(|q| q.degree());
    out.extend(rest.into_iter().map(Location::Conjugates));
    out
}

/// `f(1/t)` as a rational function of `t`.
fn invert_argument(f: &RatFunc<Rational>) -> RatFunc<Rational> {
    let rev = |p: &UPoly<Rational>| -> (UPoly<Rational>, usize) {
        let d = p.degree().unwrap_or(0);
        (p.reversed(d), d)
    };
    let (n, dn) = rev(f.numer());
    let (d, dd) = rev(f.denom());
    // num(1/t)/den(1/t) = t^(dd - dn) * n / d
    let (n, d) = if dd >= dn {
        (n.shift_up(dd - dn), d)
    } else {
        (n, d.shift_up(dn - dd))
    };
    RatFunc::new(n, d).expect("nonzero denominator")
}

/// Coefficients of the equation in `t = 1/z`, normalized to leading
/// coefficient 1.
pub(crate) fn at_infinity(coeffs: &[RatFunc<Rational>]) -> Vec<RatFunc<Rational>> {
    let n = coeffs.len();
    let minus_t2 = UPoly::monomial(-<Rational as Ring>::one(), 2);
    // (d/dz)^k = Σ_j b[k][j] (d/dt)^j with d/dz = -t^2 d/dt.
    let mut b: Vec<Vec<UPoly<Rational>>> = alloc::vec![alloc::vec![UPoly::one()]];
    for k in 0..n {
        let prev = &b[k];
        let mut next = alloc::vec![UPoly::zero(); k + 2];
        for (j, p) in prev.iter().enumerate() {
            next[j] = next[j].add(&minus_t2.mul(&p.derivative()));
            next[j + 1] = next[j + 1].add(&minus_t2.mul(p));
        }
        b.push(next);
    }
    let mut full: Vec<RatFunc<Rational>> = coeffs.iter().map(invert_argument).collect();
    full.push(RatFunc::one());
    let lead = RatFunc::from_poly(b[n][n].clone());
    (0..n)
        .map(|j| {
            let mut acc = RatFunc::zero();
            for (k, c) in full.iter().enumerate() {
                if j <= k {
                    acc = acc.add(&c.mul(&RatFunc::from_poly(b[k][j].clone())));
                }
            }
            acc.div(&lead).expect("nonzero leading coefficient")
        })
        .collect()
}

fn has_pole_at_zero(coeffs: &[RatFunc<Rational>]) -> bool {
    coeffs.iter().any(|c| c.denom().coeff(0).is_zero())
}

/// Singular points: the poles of the coefficients, and infinity when the
/// equation in `t = 1/z` has a pole at `t = 0`.
pub fn singular_points(ode: &OdeResult<Rational>) -> Result<Vec<SingularPoint>> {
    let coeffs = z_coefficients(ode)?;
    let mut out: Vec<SingularPoint> = finite_locations(&coeffs)
        .into_iter()
        .map(|location| SingularPoint { location })
        .collect();
    if has_pole_at_zero(&at_infinity(&coeffs)) {
        out.push(SingularPoint {
            location: Location::Infinity,
        });
    }
    Ok(out)
}

/// Multiplies `a` and `b` in `Q[x]/(q)`.
fn mulmod(a: &UPoly<Rational>, b: &UPoly<Rational>, q: &UPoly<Rational>) -> UPoly<Rational> {
    a.mul(b).rem(q).expect("nonzero modulus")
}

/// Indicial polynomial at a class of points, as a polynomial in `e`.
fn indicial_at_class(
    coeffs: &[RatFunc<Rational>],
    q: &UPoly<Rational>,
    point: &dyn Fn() -> String,
) -> Result<UPoly<Rational>> {
    let n = coeffs.len();
    let dq = q.derivative();
    // Leading Laurent coefficients a_k in Q[x]/(q).
    let mut a: Vec<UPoly<Rational>> = Vec::with_capacity(n);
    for (k, c) in coeffs.iter().enumerate() {
        let mut den = c.denom().clone();
        let mut v = 0usize;
        loop {
            let (quo, rem) = den.divrem(q).unwrap();
            if !rem.is_zero() {
                break;
            }
            den = quo;
            v += 1;
        }
        if v > n - k {
            return Err(Error::IrregularSingularity { point: point() });
        }
        if v < n - k {
            a.push(UPoly::zero());
            continue;
        }
        let mut scale = den.rem(q).unwrap();
        for _ in 0..v {
            scale = mulmod(&scale, &dq, q);
        }
        let inv = scale.inv_mod(q).ok_or_else(|| Error::InvalidInput(format!(
            "the point class {} is not uniform",
            point()
        )))?;
        a.push(mulmod(&c.numer().rem(q).unwrap(), &inv, q));
    }
    let mut rational = Vec::with_capacity(n);
    for ak in &a {
        match ak.degree() {
            None => rational.push(<Rational as Ring>::zero()),
            Some(0) => rational.push(ak.coeff(0)),
            Some(_) => return Err(Error::NonRationalExponents { point: point() }),
        }
    }
    // [e]_n + Σ a_k [e]_k with [e]_k = e(e-1)...(e-k+1)
    let mut falling = UPoly::one();
    let mut poly = UPoly::zero();
    for k in 0..=n {
        let coeff = rational.get(k).cloned().unwrap_or_else(<Rational as Ring>::one);
        poly = poly.add(&falling.mul_scalar(&coeff));
        falling = falling.mul(&UPoly::from_coeffs(alloc::vec![
            Rational::from_integer((-(k as i64)).into()),
            <Rational as Ring>::one(),
        ]));
    }
    Ok(poly)
}

/// Indicial polynomial of the equation at `location`.
pub fn indicial_polynomial(ode: &OdeResult<Rational>, location: &Location) -> Result<UPoly<Rational>> {
    let coeffs = z_coefficients(ode)?;
    let name = || location.to_string();
    match location {
        Location::Finite(a) => {
            let q = UPoly::from_coeffs(alloc::vec![-a.clone(), <Rational as Ring>::one()]);
            indicial_at_class(&coeffs, &q, &name)
        }
        Location::Conjugates(q) => indicial_at_class(&coeffs, q, &name),
        Location::Infinity => indicial_at_class(&at_infinity(&coeffs), &UPoly::x(), &name),
    }
}

/// The `n` characteristic exponents at `location`, sorted, with repetition.
pub fn indicial_exponents(ode: &OdeResult<Rational>, location: &Location) -> Result<Vec<Rational>> {
    let poly = indicial_polynomial(ode, location)?;
    let mut out = Vec::new();
    for (r, m) in rational_roots(&poly) {
        for _ in 0..m {
            out.push(r.clone());
        }
    }
    if out.len() != ode.order() {
        return Err(Error::NonRationalExponents {
            point: location.to_string(),
        });
    }
    out.sort();
    Ok(out)
}

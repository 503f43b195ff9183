use alloc::vec::Vec;

use num_integer::Integer;

use super::{Field, MPoly, Rational, Ring, UPoly};

/// Univariate rational function over a field, kept with coprime numerator
/// and monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<K> {
    num: UPoly<K>,
    den: UPoly<K>,
}

impl<K: Field> RatFunc<K> {
    /// `num / den` in lowest terms; `None` when `den` is zero.
    pub fn new(num: UPoly<K>, den: UPoly<K>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::from_poly(UPoly::zero()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.divrem(&g)?.0, den.divrem(&g)?.0)
        };
        let inv = den.lead()?.inv()?;
        Some(RatFunc {
            num: num.mul_scalar(&inv),
            den: den.mul_scalar(&inv),
        })
    }

    pub fn from_poly(p: UPoly<K>) -> Self {
        RatFunc {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::from_poly(UPoly::x())
    }

    pub fn numer(&self) -> &UPoly<K> {
        &self.num
    }

    pub fn denom(&self) -> &UPoly<K> {
        &self.den
    }

    /// The constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<K> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(K::zero()),
            (Some(0), Some(0)) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    pub fn derivative(&self) -> Self {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &K) -> Option<K> {
        self.num.eval(x).div(&self.den.eval(x))
    }

    /// `f(x^g)`
    pub fn inflate(&self, g: usize) -> Self {
        RatFunc {
            num: self.num.inflate(g),
            den: self.den.inflate(g),
        }
    }

    pub fn deflate(&self, g: usize) -> Self {
        RatFunc {
            num: self.num.deflate(g),
            den: self.den.deflate(g),
        }
    }

    /// gcd of all exponents appearing in numerator and denominator.
    pub fn exponent_gcd(&self) -> usize {
        self.num.exponent_gcd().gcd(&self.den.exponent_gcd())
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Option<RatFunc<L>> {
        RatFunc::new(self.num.map(&f), self.den.map(&f))
    }

    /// `p(args)` evaluated over a single common denominator, so that only
    /// one gcd is taken at the end.
    pub fn eval_mpoly(p: &MPoly<Rational>, args: &[RatFunc<K>]) -> RatFunc<K> {
        let n = p.nvars();
        assert_eq!(args.len(), n, "one argument per variable");
        let mut max_e = alloc::vec![0u32; n];
        for (m, _) in p.terms() {
            for (i, &e) in m.exps().iter().enumerate() {
                max_e[i] = max_e[i].max(e);
            }
        }
        let num_pows: Vec<Vec<UPoly<K>>> = (0..n)
            .map(|i| powers(&args[i].num, max_e[i]))
            .collect();
        let den_pows: Vec<Vec<UPoly<K>>> = (0..n)
            .map(|i| powers(&args[i].den, max_e[i]))
            .collect();
        let mut acc = UPoly::zero();
        for (m, c) in p.terms() {
            let mut t = UPoly::constant(K::from_rational(c));
            for (i, &e) in m.exps().iter().enumerate() {
                if max_e[i] == 0 {
                    continue;
                }
                t = t
                    .mul(&num_pows[i][e as usize])
                    .mul(&den_pows[i][(max_e[i] - e) as usize]);
            }
            acc = acc.add(&t);
        }
        let den = (0..n).fold(UPoly::one(), |d, i| d.mul(&den_pows[i][max_e[i] as usize]));
        Self::new(acc, den).expect("nonzero denominator")
    }
}

fn powers<K: Field>(p: &UPoly<K>, e: u32) -> Vec<UPoly<K>> {
    let mut out = Vec::with_capacity(e as usize + 1);
    out.push(UPoly::one());
    for k in 0..e as usize {
        let next = out[k].mul(p);
        out.push(next);
    }
    out
}

impl<K: Field> Ring for RatFunc<K> {
    fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(UPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone()).unwrap();
        }
        let n = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(n, self.den.mul(&other.den)).unwrap()
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.degree() == Some(0) && other.den.degree() == Some(0) {
            return Self::from_poly(self.num.mul(&other.num));
        }
        // Cross-cancel before multiplying to keep the final gcd small.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let a = self.num.divrem(&g1).unwrap().0;
        let d = other.den.divrem(&g1).unwrap().0;
        let c = other.num.divrem(&g2).unwrap().0;
        let b = self.den.divrem(&g2).unwrap().0;
        let den = b.mul(&d);
        let inv = den.lead().unwrap().inv().unwrap();
        RatFunc {
            num: a.mul(&c).mul_scalar(&inv),
            den: den.mul_scalar(&inv),
        }
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(K::from_rational(q))
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        Field::div(self, other)
    }
}

impl<K: Field> Field for RatFunc<K> {
    fn inv(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Primitive pseudo-remainder sequence over `K[x]`, which avoids the
    /// coefficient growth of Euclid's algorithm over `K(x)`.
    fn poly_gcd(a: &UPoly<Self>, b: &UPoly<Self>) -> UPoly<Self> {
        if a.is_zero() || b.is_zero() {
            return if a.is_zero() { b.monic() } else { a.monic() };
        }
        let mut x = primitive_over_polys(a);
        let mut y = primitive_over_polys(b);
        if x.len() < y.len() {
            core::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = prim_prem_polys(&x, &y);
            x = y;
            y = r;
        }
        UPoly::from_coeffs(x.into_iter().map(Self::from_poly).collect()).monic()
    }
}

/// Polynomial coefficients proportional to `p`, with monic content 1.
fn primitive_over_polys<K: Field>(p: &UPoly<RatFunc<K>>) -> Vec<UPoly<K>> {
    let lcm = p.coeffs().iter().fold(UPoly::one(), |acc: UPoly<K>, c| {
        let g = acc.gcd(&c.den);
        acc.mul(&c.den.divrem(&g).unwrap().0)
    });
    let mut v: Vec<UPoly<K>> = p
        .coeffs()
        .iter()
        .map(|c| c.num.mul(&lcm.divrem(&c.den).unwrap().0))
        .collect();
    remove_content(&mut v);
    v
}

fn remove_content<K: Field>(v: &mut [UPoly<K>]) {
    let mut g = UPoly::zero();
    for c in v.iter() {
        g = g.gcd(c);
        if g.degree() == Some(0) {
            break;
        }
    }
    if g.degree().is_some_and(|d| d > 0) {
        for c in v.iter_mut() {
            *c = c.divrem(&g).unwrap().0;
        }
    }
}

fn prim_prem_polys<K: Field>(a: &[UPoly<K>], b: &[UPoly<K>]) -> Vec<UPoly<K>> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&lr.mul(bc));
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        remove_content(&mut r);
    }
    r
}

/// A function of `z` written as a rational function of `w` with `z = w^r`.
///
/// Stored in normal form: the ramification index is minimal, so structural
/// equality is equality of functions.
#[derive(Clone, Debug, PartialEq)]
pub struct RamifiedFunction<K> {
    r: u32,
    f: RatFunc<K>,
}

impl<K: Field> RamifiedFunction<K> {
    /// The function `f(w)` with `z = w^r`, normalized.
    pub fn new(r: u32, f: RatFunc<K>) -> Self {
        assert!(r >= 1, "ramification index must be positive");
        RamifiedFunction { r, f }.normalize()
    }

    /// An unramified rational function of `z`.
    pub fn from_z(f: RatFunc<K>) -> Self {
        RamifiedFunction { r: 1, f }
    }

    /// `c * z^(p/q)`
    pub fn power_of_z(c: K, p: i64, q: u32) -> Self {
        let f = if p >= 0 {
            RatFunc::from_poly(UPoly::monomial(c, p as usize))
        } else {
            RatFunc::new(UPoly::constant(c), UPoly::monomial(K::one(), (-p) as usize)).unwrap()
        };
        Self::new(q, f)
    }

    pub fn z() -> Self {
        Self::from_z(RatFunc::x())
    }

    pub fn ramification(&self) -> u32 {
        self.r
    }

    /// The representation in `w`.
    pub fn in_w(&self) -> &RatFunc<K> {
        &self.f
    }

    /// The rational function of `z`, when no ramification remains.
    pub fn in_z(&self) -> Option<&RatFunc<K>> {
        (self.r == 1).then_some(&self.f)
    }

    /// Drops `r` to its minimum by deflating `w`.
    pub fn normalize(self) -> Self {
        let g = (self.r as usize).gcd(&self.f.exponent_gcd());
        if g <= 1 {
            return self;
        }
        RamifiedFunction {
            r: self.r / g as u32,
            f: self.f.deflate(g),
        }
    }

    /// Representation over `z = w^s` where `r` divides `s`.
    pub fn lift(&self, s: u32) -> RatFunc<K> {
        assert!(s.is_multiple_of(self.r), "target ramification must be a multiple");
        self.f.inflate((s / self.r) as usize)
    }

    fn combine(&self, other: &Self, op: impl Fn(&RatFunc<K>, &RatFunc<K>) -> RatFunc<K>) -> Self {
        if self.r == other.r {
            return Self::new(self.r, op(&self.f, &other.f));
        }
        let s = self.r.lcm(&other.r);
        Self::new(s, op(&self.lift(s), &other.lift(s)))
    }

    /// `d/dz`, realized as `(1 / (r w^(r-1))) d/dw`.
    pub fn derivative(&self) -> Self {
        let d = self.f.derivative();
        if self.r == 1 {
            return Self::from_z(d);
        }
        let factor = RatFunc::new(
            UPoly::constant(K::one()),
            UPoly::monomial(K::from_i64(self.r as i64), self.r as usize - 1),
        )
        .unwrap();
        Self::new(self.r, d.mul(&factor))
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Option<RamifiedFunction<L>> {
        Some(RamifiedFunction::new(self.r, self.f.map(f)?))
    }
}

impl<K: Field> Ring for RamifiedFunction<K> {
    fn zero() -> Self {
        Self::from_z(RatFunc::zero())
    }
    fn one() -> Self {
        Self::from_z(RatFunc::one())
    }
    fn is_zero(&self) -> bool {
        self.f.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.add(b))
    }
    fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.sub(b))
    }
    fn mul(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.mul(b))
    }
    fn neg(&self) -> Self {
        RamifiedFunction {
            r: self.r,
            f: self.f.neg(),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_z(RatFunc::from_rational(q))
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        Field::div(self, other)
    }
}

impl<K: Field> Field for RamifiedFunction<K> {
    fn inv(&self) -> Option<Self> {
        Some(RamifiedFunction {
            r: self.r,
            f: self.f.inv()?,
        })
    }
}

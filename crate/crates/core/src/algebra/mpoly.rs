use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Rational, Ring};

/// Exponent vector ordered degree-lexicographically: higher total degree
/// first compares greater, ties broken lexicographically with `X1` most
/// significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `n` variables with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<K> {
    nvars: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Ring> MPoly<K> {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, K::one())
    }

    /// The variable `X_{i+1}` (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::from_terms(nvars, [(Monomial::var(nvars, i), K::one())])
    }

    /// Sums repeated monomials and drops zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> K {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term in degree-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, MPoly<K>> {
        let mut out: BTreeMap<u32, MPoly<K>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| MPoly::zero(self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Pads a constant polynomial in zero variables to `n` variables.
    fn widen(&self, n: usize) -> Cow<'_, Self> {
        if self.nvars == n {
            return Cow::Borrowed(self);
        }
        assert_eq!(self.nvars, 0, "variable count mismatch");
        Cow::Owned(Self::from_terms(
            n,
            self.terms.values().map(|c| (Monomial::one(n), c.clone())),
        ))
    }

    fn aligned(&self, other: &Self) -> (Self, usize) {
        let n = self.nvars.max(other.nvars);
        (self.widen(n).into_owned(), n)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut out, n) = self.aligned(other);
        let other = other.widen(n);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(K::neg)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (mut out, n) = self.aligned(other);
        let other = other.widen(n);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.nvars.max(other.nvars);
        let (a, b) = (self.widen(n), other.widen(n));
        let (this, other) = (a.as_ref(), b.as_ref());
        let mut out = Self::zero(n);
        let (small, big) = if this.terms.len() <= other.terms.len() {
            (this, other)
        } else {
            (other, this)
        };
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter_map(|(m, a)| {
                    let p = a.mul(c);
                    (!p.is_zero()).then(|| (m.clone(), p))
                })
                .collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.mul_scalar(&K::from_rational(q))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `X_{i+1}`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c.mul(&K::from_i64(e as i64)));
        }
        out
    }

    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut powers: Vec<Vec<K>> = vec![vec![K::one()]; self.nvars];
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&point[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Composition `p(q_1, ..., q_n)`; the `q_i` may live in a different
    /// number of variables.
    pub fn substitute(&self, images: &[MPoly<K>]) -> MPoly<K> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, |q| q.nvars);
        let mut powers: Vec<Vec<MPoly<K>>> = vec![vec![MPoly::one(target)]; self.nvars];
        let mut acc = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Composition by nested Horner schemes, one variable at a time.
    ///
    /// Cheaper than [`substitute`](Self::substitute) when the images are
    /// small (for instance linear forms) and `self` is dense.
    pub fn substitute_horner(&self, images: &[MPoly<K>]) -> MPoly<K> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, |q| q.nvars);
        self.horner_from(images, 0, target)
    }

    fn horner_from(&self, images: &[MPoly<K>], var: usize, target: usize) -> MPoly<K> {
        if var == self.nvars {
            let c = self.terms.values().next().cloned().unwrap_or_else(K::zero);
            return MPoly::constant(target, c);
        }
        let mut parts: BTreeMap<u32, MPoly<K>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let e = core::mem::take(&mut exps[var]);
            parts
                .entry(e)
                .or_insert_with(|| MPoly::zero(self.nvars))
                .terms
                .insert(Monomial(exps), c.clone());
        }
        let mut acc = MPoly::zero(target);
        let mut prev: Option<u32> = None;
        for (&e, part) in parts.iter().rev() {
            if let Some(p) = prev {
                for _ in e..p {
                    acc = acc.mul(&images[var]);
                }
            }
            acc = acc.add(&part.horner_from(images, var + 1, target));
            prev = Some(e);
        }
        for _ in 0..prev.unwrap_or(0) {
            acc = acc.mul(&images[var]);
        }
        acc
    }

    pub fn map_coeffs<L: Ring>(&self, f: impl Fn(&K) -> L) -> MPoly<L> {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let d = d.widen(self.nvars.max(d.nvars));
        let d = d.as_ref();
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lm)?;
            let qc = c.exact_div(&lc)?;
            let t = Self::from_terms(self.nvars, [(qm, qc)]);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }
}

/// The trait constants are polynomials in zero variables; they combine with
/// polynomials in any number of variables.
impl<K: Ring> Ring for MPoly<K> {
    fn zero() -> Self {
        MPoly::zero(0)
    }
    fn one() -> Self {
        MPoly::one(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        MPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
    fn from_rational(q: &Rational) -> Self {
        MPoly::constant(0, K::from_rational(q))
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.div_exact(other)
    }
}

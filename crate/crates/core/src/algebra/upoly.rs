use alloc::vec;
use alloc::vec::Vec;

use super::{Field, Rational, Ring};

/// Dense univariate polynomial, coefficients stored from degree 0 upward
/// with no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Ring> UPoly<K> {
    pub fn from_coeffs(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(c: K, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); deg + 1];
        coeffs[deg] = c;
        UPoly { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&K> {
        self.coeffs.last()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => K::zero(),
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn mul_scalar(&self, c: &K) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&K::from_i64(i as i64)))
                .collect(),
        )
    }

    /// `p(x^g)`
    pub fn inflate(&self, g: usize) -> Self {
        if g == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![K::zero(); (self.coeffs.len() - 1) * g + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * g] = c.clone();
        }
        UPoly { coeffs }
    }

    /// Inverse of [`inflate`](Self::inflate); `g` must divide every exponent.
    pub fn deflate(&self, g: usize) -> Self {
        if g == 1 {
            return self.clone();
        }
        Self::from_coeffs(self.coeffs.iter().step_by(g).cloned().collect())
    }

    /// gcd of the exponents carrying nonzero coefficients (0 for constants).
    pub fn exponent_gcd(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(0usize, |g, (i, _)| num_integer::gcd(g, i))
    }

    /// `x^deg * p(1/x)` for `deg >= degree(p)`.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut coeffs = vec![K::zero(); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[deg - i] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    /// Divide by `x^k`; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn map<L: Ring>(&self, f: impl Fn(&K) -> L) -> UPoly<L> {
        UPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<K: Ring> UPoly<K> {
    /// `self(q(x))` by Horner's rule.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(q).add(&Self::constant(c.clone())))
    }

    /// `self(x + a)`.
    pub fn shift(&self, a: &K) -> Self {
        self.compose(&Self::from_coeffs(vec![a.clone(), K::one()]))
    }
}

impl<K: Field> UPoly<K> {
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead_inv = d.lead()?.inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = rem[idx].sub(&c.mul(dc));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, d: &Self) -> Option<Self> {
        self.divrem(d).map(|(_, r)| r)
    }

    pub fn monic(&self) -> Self {
        match self.lead().and_then(|l| l.inv()) {
            Some(inv) => self.mul_scalar(&inv),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        K::poly_gcd(self, other)
    }

    /// `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = core::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = core::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.lead().and_then(|l| l.inv()) {
            Some(inv) => (r0.mul_scalar(&inv), s0.mul_scalar(&inv), t0.mul_scalar(&inv)),
            None => (r0, s0, t0),
        }
    }

    /// Inverse of `self` modulo `m`, if they are coprime.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.ext_gcd(m);
        if g.degree() == Some(0) {
            s.rem(m)
        } else {
            None
        }
    }

    /// Squarefree part (monic).
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).map(|(q, _)| q.monic()).unwrap_or_else(|| self.clone())
    }
}

pub(crate) fn euclid_gcd<K: Field>(a: &UPoly<K>, b: &UPoly<K>) -> UPoly<K> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y).expect("nonzero divisor");
        x = core::mem::replace(&mut y, r);
    }
    x.monic()
}

impl<K: Field> Ring for UPoly<K> {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        UPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        UPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        UPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        UPoly::neg(self)
    }
    fn from_rational(q: &Rational) -> Self {
        UPoly::constant(K::from_rational(q))
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.divrem(other)?;
        r.is_zero().then_some(q)
    }
}

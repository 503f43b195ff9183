use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{MPoly, RamifiedFunction, RatFunc, Rational, UPoly};

pub(crate) fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Floating-point image of an exact polynomial in `X_1..X_n`.
#[derive(Clone, Debug)]
pub struct NumPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl NumPoly {
    pub fn new(p: &MPoly<Rational>) -> Self {
        NumPoly {
            nvars: p.nvars(),
            terms: p.terms().map(|(m, c)| (m.exps().to_vec(), to_f64(c))).collect(),
        }
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms.iter().fold(Complex64::zero(), |acc, (e, c)| {
            let mut t = Complex64::new(*c, 0.0);
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= xi.powu(k);
                }
            }
            acc + t
        })
    }

    /// Value on truncated power series `x_i(h) = Σ_k x[i][k] h^k`, keeping
    /// `order` coefficients.
    pub fn eval_series(&self, x: &[Vec<Complex64>], order: usize) -> Vec<Complex64> {
        let mut acc = alloc::vec![Complex64::zero(); order];
        for (e, c) in &self.terms {
            let mut t = alloc::vec![Complex64::zero(); order];
            t[0] = Complex64::new(*c, 0.0);
            for (i, &k) in e.iter().enumerate().take(self.nvars) {
                for _ in 0..k {
                    t = series_mul(&t, &x[i], order);
                }
            }
            for (a, b) in acc.iter_mut().zip(&t) {
                *a += b;
            }
        }
        acc
    }
}

fn series_mul(a: &[Complex64], b: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut out = alloc::vec![Complex64::zero(); order];
    for (i, ai) in a.iter().enumerate().take(order) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn horner(c: &[f64], w: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, v| acc * w + v)
}

/// A function of `z = w^s` evaluated through `w`.
#[derive(Clone, Debug)]
pub struct NumFunc {
    num: Vec<f64>,
    den: Vec<f64>,
}

impl NumFunc {
    /// Representation over the common ramification `s`.
    pub fn new(f: &RamifiedFunction<Rational>, s: u32) -> Self {
        let g: RatFunc<Rational> = f.lift(s);
        let conv = |p: &UPoly<Rational>| p.coeffs().iter().map(to_f64).collect();
        NumFunc {
            num: conv(g.numer()),
            den: conv(g.denom()),
        }
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        horner(&self.num, w) / horner(&self.den, w)
    }
}

/// Continues `w = z^(1/s)` along a path by picking, among the `s` roots, the
/// one nearest the previous value.
#[derive(Clone, Copy, Debug)]
pub struct Branch {
    s: u32,
    w: Complex64,
}

impl Branch {
    /// Principal root at the base point.
    pub fn principal(s: u32, z: Complex64) -> Self {
        let w = if s == 1 { z } else { z.powf(1.0 / s as f64) };
        Branch { s, w }
    }

    pub fn w(&self) -> Complex64 {
        self.w
    }

    /// The root of `w^s = z` nearest the current one, without moving.
    pub fn nearest(&self, z: Complex64) -> Complex64 {
        if self.s == 1 {
            return z;
        }
        let base = z.powf(1.0 / self.s as f64);
        let turn = Complex64::from_polar(1.0, core::f64::consts::TAU / self.s as f64);
        let mut best = base;
        let mut cand = base;
        for _ in 1..self.s {
            cand *= turn;
            if (cand - self.w).norm() < (best - self.w).norm() {
                best = cand;
            }
        }
        best
    }

    pub fn advance(&mut self, z: Complex64) -> Complex64 {
        self.w = self.nearest(z);
        self.w
    }
}

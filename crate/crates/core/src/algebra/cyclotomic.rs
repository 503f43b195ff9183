use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Field, Rational, Ring, UPoly};

pub fn euler_totient(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "conductor must be positive");
    // x^m - 1 divided by every Phi_d with d | m, d < m.
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    poly[0] = -BigInt::one();
    poly[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            poly = exact_div_monic(&poly, &div);
        }
    }
    poly
}

fn exact_div_monic(a: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
    let dd = d.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - dd];
    for i in (dd..a.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[i - dd + j] -= &c * dc;
        }
        quot[i - dd] = c;
    }
    quot
}

/// Element of the cyclotomic field Q(zeta_m), stored as an integer vector
/// over a common positive denominator, reduced modulo the `m`-th cyclotomic
/// polynomial.
///
/// Elements with different conductors are lifted to the least common
/// conductor before arithmetic or comparison.
#[derive(Clone, Debug)]
pub struct CycNum {
    m: u32,
    modulus: Arc<[BigInt]>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn with_conductor(m: u32) -> (Arc<[BigInt]>, usize) {
        let modulus: Arc<[BigInt]> = cyclotomic_polynomial(m).into();
        let phi = modulus.len() - 1;
        (modulus, phi)
    }

    /// Builds `sum_i coeffs[i] * zeta_m^i`, reducing as needed.
    pub fn from_power_coeffs(m: u32, coeffs: &[Rational]) -> Self {
        let (modulus, _) = Self::with_conductor(m);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        Self::reduce_raw(m, modulus, num, den)
    }

    pub fn rational(m: u32, q: &Rational) -> Self {
        Self::from_power_coeffs(m, core::slice::from_ref(q))
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn zeta(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut coeffs = vec![<Rational as Ring>::zero(); e + 1];
        coeffs[e] = <Rational as Ring>::one();
        Self::from_power_coeffs(m, &coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Coefficients in the power basis `1, zeta, ..., zeta^(phi(m)-1)`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|n| Rational::new(n.clone(), self.den.clone()))
            .collect()
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            Some(Rational::new(
                self.num.first().cloned().unwrap_or_default(),
                self.den.clone(),
            ))
        } else {
            None
        }
    }

    fn reduce_raw(m: u32, modulus: Arc<[BigInt]>, mut num: Vec<BigInt>, den: BigInt) -> Self {
        let phi = modulus.len() - 1;
        if num.len() > phi {
            for k in (phi..num.len()).rev() {
                let c = core::mem::take(&mut num[k]);
                if c.is_zero() {
                    continue;
                }
                for j in 0..phi {
                    let mj = &modulus[j];
                    if !mj.is_zero() {
                        num[k - phi + j] -= &c * mj;
                    }
                }
            }
        }
        num.resize(phi, BigInt::zero());
        let mut out = CycNum { m, modulus, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        let g = self
            .num
            .iter()
            .fold(self.den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() && !g.is_zero() {
            self.den = &self.den / &g;
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
        }
    }

    /// The same element viewed in Q(zeta_target); `m` must divide `target`.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.m {
            return self.clone();
        }
        assert!(target.is_multiple_of(self.m), "conductor must divide the target");
        let step = (target / self.m) as usize;
        let mut num = vec![BigInt::zero(); (self.num.len().max(1) - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            num[i * step] = c.clone();
        }
        let (modulus, _) = Self::with_conductor(target);
        Self::reduce_raw(target, modulus, num, self.den.clone())
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.m == other.m {
            (self.clone(), other.clone())
        } else {
            let l = self.m.lcm(&other.m);
            (self.lift(l), other.lift(l))
        }
    }

    fn to_upoly(&self) -> UPoly<Rational> {
        UPoly::from_coeffs(self.coeffs())
    }

    /// Complex value under the embedding zeta_m -> exp(2 pi i / m).
    pub fn to_complex(&self) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let step = 2.0 * core::f64::consts::PI / self.m as f64;
        self.num
            .iter()
            .enumerate()
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, (k, c)| {
                let v = c.to_f64().unwrap_or(f64::NAN) / den;
                acc + num_complex::Complex64::from_polar(v, step * k as f64)
            })
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.den == b.den && a.num == b.num
    }
}

impl Ring for CycNum {
    fn zero() -> Self {
        Self::rational(1, &<Rational as Ring>::zero())
    }
    fn one() -> Self {
        Self::rational(1, &<Rational as Ring>::one())
    }
    fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }
    fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let den = &a.den * &b.den;
        let num = a
            .num
            .iter()
            .zip(b.num.iter())
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        let mut out = CycNum {
            m: a.m,
            modulus: a.modulus,
            num,
            den,
        };
        out.normalize();
        out
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let mut num = vec![BigInt::zero(); (a.num.len() + b.num.len()).saturating_sub(1).max(1)];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    num[i + j] += x * y;
                }
            }
        }
        Self::reduce_raw(a.m, a.modulus, num, &a.den * &b.den)
    }
    fn neg(&self) -> Self {
        CycNum {
            m: self.m,
            modulus: self.modulus.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::rational(1, q)
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        Field::div(self, other)
    }
}

impl Field for CycNum {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus = UPoly::from_coeffs(
            self.modulus
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        );
        let inv = self.to_upoly().inv_mod(&modulus)?;
        Some(Self::from_power_coeffs(self.m, inv.coeffs()))
    }
}

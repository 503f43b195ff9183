use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::{Rational, Ring, UPoly};

/// All complex roots of `Σ c_i x^i` (with multiplicity) by Aberth–Ehrlich
/// iteration. Leading zero coefficients are dropped.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|v| v.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|v| v / lead).collect();
    // Cauchy bound for the initial circle.
    let radius = 1.0 + monic[..n].iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + core::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for a in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::one() / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::one() - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Distinct rational roots of `p`, each with its multiplicity.
pub fn rational_roots(p: &UPoly<Rational>) -> Vec<(Rational, u32)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut rest = p.clone();
    let v = rest.valuation().unwrap_or(0);
    if v > 0 {
        out.push((<Rational as Ring>::zero(), v as u32));
        rest = rest.shift_down(v);
    }
    let sf = rest.squarefree();
    let ints = integer_coeffs(&sf);
    let lead = ints.last().cloned().unwrap_or_else(BigInt::one);
    let approx: Vec<Complex64> = sf
        .coeffs()
        .iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(0.0), 0.0))
        .collect();
    let mut candidates: Vec<Rational> = Vec::new();
    if sf.degree() == Some(1) {
        candidates.push(-(sf.coeff(0) / sf.coeff(1)));
    } else {
        let lead_f = lead.to_f64().unwrap_or(f64::INFINITY);
        for r in complex_roots(&approx) {
            if r.im.abs() > 1e-6 * (1.0 + r.re.abs()) {
                continue;
            }
            // A rational root is k/lead for an integer k.
            let k = (r.re * lead_f).round();
            if !k.is_finite() {
                continue;
            }
            for dk in [0.0, -1.0, 1.0] {
                if let Some(kb) = BigInt::from_f64(k + dk) {
                    candidates.push(Rational::new(kb, lead.clone()));
                }
            }
        }
    }
    for c in candidates {
        if out.iter().any(|(r, _)| *r == c) || !Ring::is_zero(&sf.eval(&c)) {
            continue;
        }
        let lin = UPoly::from_coeffs(alloc::vec![-c.clone(), <Rational as Ring>::one()]);
        let mut m = 0;
        while let Some((q, r)) = rest.divrem(&lin) {
            if !r.is_zero() {
                break;
            }
            rest = q;
            m += 1;
        }
        out.push((c, m));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Primitive integer multiple of `p` with positive leading coefficient.
pub fn integer_coeffs(p: &UPoly<Rational>) -> Vec<BigInt> {
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = nums.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if p.lead().is_some_and(|l| l.is_negative()) { -1 } else { 1 };
    if g.is_zero() {
        return nums;
    }
    nums.into_iter().map(|c| c / &g * sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn poly(c: &[Rational]) -> UPoly<Rational> {
        UPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn aberth_finds_roots_of_unity() {
        let mut c = alloc::vec![Complex64::zero(); 8];
        c[0] = Complex64::new(-1.0, 0.0);
        c[7] = Complex64::one();
        let roots = complex_roots(&c);
        assert_eq!(roots.len(), 7);
        for r in roots {
            assert!((r.powu(7) - Complex64::one()).norm() < 1e-12);
        }
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (x - 2/3)^2 (x + 5) (x^2 + 1) x
        let lin = |a: Rational| poly(&[-a, rat(1, 1)]);
        let p = lin(rat(2, 3))
            .pow(2)
            .mul(&lin(rat(-5, 1)))
            .mul(&poly(&[rat(1, 1), rat(0, 1), rat(1, 1)]))
            .mul(&lin(rat(0, 1)));
        assert_eq!(
            rational_roots(&p),
            [(rat(-5, 1), 1), (rat(0, 1), 1), (rat(2, 3), 2)]
        );
        assert!(rational_roots(&poly(&[rat(-2, 1), rat(0, 1), rat(1, 1)])).is_empty());
    }
}

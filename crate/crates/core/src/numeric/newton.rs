use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::eval::NumPoly;
use crate::algebra::MPoly;
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Gaussian elimination with partial pivoting.
pub(crate) fn solve(a: &[Vec<Complex64>], b: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = b.len();
    let mut m: Vec<Vec<Complex64>> = a.to_vec();
    let mut rhs = b.to_vec();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm()))?;
        if m[p][k].norm() == 0.0 {
            return None;
        }
        m.swap(k, p);
        rhs.swap(k, p);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            let (top, bottom) = m.split_at_mut(i);
            for (dst, src) in bottom[0][k..n].iter_mut().zip(&top[k][k..n]) {
                *dst -= f * src;
            }
            let v = rhs[k];
            rhs[i] -= f * v;
        }
    }
    let mut x = alloc::vec![Complex64::zero(); n];
    for k in (0..n).rev() {
        let s = (k + 1..n).fold(rhs[k], |acc, j| acc - m[k][j] * x[j]);
        x[k] = s / m[k][k];
    }
    Some(x)
}

fn inf_norm(a: &[Vec<Complex64>]) -> f64 {
    a.iter()
        .map(|r| r.iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `s ‖J⁻¹‖` in the infinity norm, with `s` the natural size of `J`;
/// infinite when `J` is singular.
pub(crate) fn condition(a: &[Vec<Complex64>], s: f64) -> f64 {
    let n = a.len();
    let mut inv = alloc::vec![alloc::vec![Complex64::zero(); n]; n];
    for j in 0..n {
        let mut e = alloc::vec![Complex64::zero(); n];
        e[j] = Complex64::new(1.0, 0.0);
        match solve(a, &e) {
            Some(col) => {
                for i in 0..n {
                    inv[i][j] = col[i];
                }
            }
            None => return f64::INFINITY,
        }
    }
    s * inf_norm(&inv)
}

/// The primary generators with their Jacobian, in floating point.
#[derive(Clone, Debug)]
pub struct NumSystem {
    pub(crate) fs: Vec<NumPoly>,
    jac: Vec<Vec<NumPoly>>,
    degrees: Vec<u32>,
}

impl NumSystem {
    pub fn new(generators: &[MPoly<Rational>]) -> Self {
        let n = generators.len();
        NumSystem {
            fs: generators.iter().map(NumPoly::new).collect(),
            jac: generators
                .iter()
                .map(|g| (0..n).map(|j| NumPoly::new(&g.partial(j))).collect())
                .collect(),
            degrees: generators
                .iter()
                .map(|g| g.total_degree().unwrap_or(1).max(1))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.fs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fs.is_empty()
    }

    pub fn jacobian(&self, x: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.jac
            .iter()
            .map(|row| row.iter().map(|p| p.eval(x)).collect())
            .collect()
    }
}

/// A solution of `F(x) = f` with the condition number of the Jacobian there.
#[derive(Clone, Debug, PartialEq)]
pub struct InitialPoint {
    pub x: Vec<Complex64>,
    pub condition: f64,
    pub residual: f64,
}

/// Largest condition number accepted for a root.
pub const MAX_CONDITION: f64 = 1e10;

fn newton(sys: &NumSystem, target: &[Complex64], mut x: Vec<Complex64>) -> Option<(Vec<Complex64>, f64)> {
    let resid = |x: &[Complex64]| -> f64 {
        sys.fs
            .iter()
            .zip(target)
            .map(|(p, t)| (p.eval(x) - t).norm() / (1.0 + t.norm()))
            .fold(0.0, f64::max)
    };
    for _ in 0..100 {
        let r: Vec<Complex64> = sys.fs.iter().zip(target).map(|(p, t)| p.eval(&x) - t).collect();
        let dx = solve(&sys.jacobian(&x), &r)?;
        let step: f64 = dx.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (xi, d) in x.iter_mut().zip(&dx) {
            *xi -= d;
        }
        if !x.iter().all(|v| v.is_finite()) {
            return None;
        }
        let scale = 1.0 + x.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if step < 1e-15 * scale {
            break;
        }
    }
    let res = resid(&x);
    (res < 1e-12).then_some((x, res))
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Solves `F_i(x) = f_i` by Newton's method from `starts` random complex
/// points in a ball sized by `|f_i|^(1/d_i)`, returning the best-conditioned
/// root.
pub fn initial_point(sys: &NumSystem, target: &[Complex64], starts: usize, seed: u64) -> Result<InitialPoint> {
    let n = sys.len();
    let radius = sys
        .degrees
        .iter()
        .zip(target)
        .map(|(&d, t)| t.norm().powf(1.0 / d as f64))
        .fold(1.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<InitialPoint> = None;
    let mut found = false;
    for _ in 0..starts {
        let x0: Vec<Complex64> = (0..n)
            .map(|_| {
                let r = radius * uniform(&mut rng).sqrt();
                Complex64::from_polar(r, core::f64::consts::TAU * uniform(&mut rng))
            })
            .collect();
        let Some((x, residual)) = newton(sys, target, x0) else {
            continue;
        };
        found = true;
        let size = 1.0 + x.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let scale = sys
            .degrees
            .iter()
            .map(|&d| d as f64 * size.powi(d as i32 - 1))
            .fold(0.0, f64::max);
        let condition = condition(&sys.jacobian(&x), scale);
        if condition < best.as_ref().map_or(f64::INFINITY, |b| b.condition) {
            best = Some(InitialPoint { x, condition, residual });
        }
    }
    match best {
        Some(b) if b.condition < MAX_CONDITION => Ok(b),
        _ if found => Err(Error::OnlyRamifiedPoints),
        _ => Err(Error::NoInitialPoint),
    }
}

/// Taylor coefficients `y_k`, `k < order`, of the solution through `x0` of
/// `F(y(z0 + h)) = f(z0 + h)`, given the Taylor coefficients of each `f_i`.
///
/// Order by order, `J(x0) y_k = f_{i,k} - [F(y_0 + ... + y_{k-1} h^{k-1})]_k`.
pub fn taylor_solution(
    sys: &NumSystem,
    x0: &[Complex64],
    f_taylor: &[Vec<Complex64>],
    order: usize,
) -> Result<Vec<Vec<Complex64>>> {
    let n = sys.len();
    let jac = sys.jacobian(x0);
    let mut series: Vec<Vec<Complex64>> = x0
        .iter()
        .map(|&v| {
            let mut s = alloc::vec![Complex64::zero(); order];
            s[0] = v;
            s
        })
        .collect();
    for k in 1..order {
        let rhs: Vec<Complex64> = (0..n)
            .map(|i| f_taylor[i][k] - sys.fs[i].eval_series(&series, k + 1)[k])
            .collect();
        let yk = solve(&jac, &rhs).ok_or(Error::SingularJacobian)?;
        for i in 0..n {
            series[i][k] = yk[i];
        }
    }
    Ok(series)
}

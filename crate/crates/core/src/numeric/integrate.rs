use alloc::vec::Vec;

use num_complex::Complex64;

use super::eval::{Branch, NumFunc};
use crate::algebra::Rational;
use crate::builder::OdeResult;
use crate::error::{Error, Result};

/// First-order system `dY/dz = G(z, Y)` along a path.
pub trait PathSystem {
    fn rhs(&self, z: Complex64, y: &[Complex64]) -> Vec<Complex64>;
    /// Called after every accepted step.
    fn accept(&mut self, _z: Complex64) {}
}

/// One stored point of a trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub z: Complex64,
    pub w: Complex64,
    pub state: Vec<Complex64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const MIN_STEP: f64 = 1e-12;
const MAX_STEPS: usize = 1_000_000;

/// Adaptive Dormand–Prince integration along the straight segment from `a`
/// to `b`, with local error below `tol` per step. `record` sees every
/// accepted point.
pub fn integrate_segment<S: PathSystem>(
    sys: &mut S,
    a: Complex64,
    b: Complex64,
    mut y: Vec<Complex64>,
    tol: f64,
    mut record: impl FnMut(Complex64, &[Complex64]),
) -> Result<Vec<Complex64>> {
    let dir = b - a;
    let len = dir.norm();
    if len == 0.0 {
        return Ok(y);
    }
    let unit = dir / len;
    let dim = y.len();
    let mut s = 0.0;
    let mut h = (len / 100.0).min(0.05);
    let mut steps = 0;
    while s < len {
        steps += 1;
        if steps > MAX_STEPS || h < MIN_STEP {
            let z = a + unit * s;
            return Err(Error::IntegrationStalled { re: z.re, im: z.im });
        }
        h = h.min(len - s);
        let z0 = a + unit * s;
        let mut k: Vec<Vec<Complex64>> = Vec::with_capacity(7);
        for stage in 0..7 {
            let mut ys = y.clone();
            for (j, kj) in k.iter().enumerate() {
                let aij = A[stage][j];
                if aij != 0.0 {
                    for (v, kv) in ys.iter_mut().zip(kj) {
                        *v += kv * (aij * h);
                    }
                }
            }
            let dy = sys.rhs(z0 + unit * (C[stage] * h), &ys);
            k.push(dy.into_iter().map(|v| v * unit).collect());
        }
        let mut y5 = y.clone();
        let mut err = 0.0f64;
        for i in 0..dim {
            let mut d5 = Complex64::new(0.0, 0.0);
            let mut d4 = Complex64::new(0.0, 0.0);
            for st in 0..7 {
                d5 += k[st][i] * B5[st];
                d4 += k[st][i] * B4[st];
            }
            y5[i] += d5 * h;
            let scale = tol * (1.0 + y[i].norm().max(y5[i].norm()));
            err = err.max(((d5 - d4) * h).norm() / scale);
        }
        if !err.is_finite() {
            h *= 0.25;
            continue;
        }
        if err <= 1.0 {
            s += h;
            y = y5;
            let z = a + unit * s;
            sys.accept(z);
            record(z, &y);
        }
        let factor = if err == 0.0 { 5.0 } else { 0.9 * err.powf(-0.2) };
        h *= factor.clamp(0.2, 5.0);
    }
    Ok(y)
}

/// The companion system of `δ^n y + Σ c_k δ^k y = 0` for several solutions
/// at once: the state holds `y_j^(k)` at index `j n + k`.
pub struct Companion {
    n: usize,
    coeffs: Vec<NumFunc>,
    branch: Branch,
}

impl Companion {
    /// Coefficients are evaluated through `w = z^(1/s)` continued from the
    /// principal branch at `base`.
    pub fn new(ode: &OdeResult<Rational>, s: u32, base: Complex64) -> Self {
        Companion {
            n: ode.order(),
            coeffs: ode.coeffs().iter().map(|c| NumFunc::new(c, s)).collect(),
            branch: Branch::principal(s, base),
        }
    }

    pub fn branch(&self) -> &Branch {
        &self.branch
    }
}

impl PathSystem for Companion {
    fn rhs(&self, z: Complex64, y: &[Complex64]) -> Vec<Complex64> {
        let w = self.branch.nearest(z);
        let c: Vec<Complex64> = self.coeffs.iter().map(|f| f.eval(w)).collect();
        let n = self.n;
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); y.len()];
        for j in 0..y.len() / n {
            let block = &y[j * n..(j + 1) * n];
            for k in 0..n - 1 {
                out[j * n + k] = block[k + 1];
            }
            out[j * n + n - 1] = -(0..n).fold(Complex64::new(0.0, 0.0), |acc, k| acc + c[k] * block[k]);
        }
        out
    }

    fn accept(&mut self, z: Complex64) {
        self.branch.advance(z);
    }
}

/// Integrates the companion system along the polyline `path` (starting at
/// the base point), recording every accepted step.
pub fn integrate(
    ode: &OdeResult<Rational>,
    s: u32,
    path: &[Complex64],
    initial: Vec<Complex64>,
    tol: f64,
) -> Result<Trajectory> {
    let base = *path.first().ok_or_else(|| Error::InvalidInput("empty path".into()))?;
    let mut sys = Companion::new(ode, s, base);
    let mut traj = Trajectory::default();
    traj.samples.push(Sample {
        z: base,
        w: sys.branch().w(),
        state: initial.clone(),
    });
    let mut y = initial;
    let mut branch = Branch::principal(s, base);
    for seg in path.windows(2) {
        let mut pts: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
        y = integrate_segment(&mut sys, seg[0], seg[1], y, tol, |z, v| pts.push((z, v.to_vec())))?;
        // Replays the continuation the system performed over the same points.
        for (z, state) in pts {
            let w = branch.advance(z);
            traj.samples.push(Sample { z, w, state });
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Exp;
    impl PathSystem for Exp {
        fn rhs(&self, _z: Complex64, y: &[Complex64]) -> Vec<Complex64> {
            y.to_vec()
        }
    }

    struct Flat;
    impl PathSystem for Flat {
        fn rhs(&self, _z: Complex64, y: &[Complex64]) -> Vec<Complex64> {
            alloc::vec![y[1], Complex64::new(0.0, 0.0)]
        }
    }

    #[test]
    fn exponential() {
        let y = integrate_segment(
            &mut Exp,
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            alloc::vec![Complex64::new(1.0, 0.0)],
            1e-13,
            |_, _| {},
        )
        .unwrap();
        assert!((y[0].re - core::f64::consts::E).abs() < 1e-10);
    }

    #[test]
    fn straight_line_in_the_plane() {
        let end = Complex64::new(2.0, 3.0);
        let y = integrate_segment(
            &mut Flat,
            Complex64::new(0.0, 0.0),
            end,
            alloc::vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            1e-12,
            |_, _| {},
        )
        .unwrap();
        assert!((y[0] - end).norm() < 1e-10);
    }
}

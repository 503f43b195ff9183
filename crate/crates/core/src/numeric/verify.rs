use alloc::vec::Vec;

use num_complex::Complex64;
use num_integer::Integer;

use super::eval::{Branch, NumFunc, NumPoly};
use super::integrate::{integrate, Companion, PathSystem, Trajectory};
use super::newton::{initial_point, taylor_solution, InitialPoint, NumSystem};
use crate::algebra::{complex_roots, RamifiedFunction, Rational};
use crate::builder::{implied_square, OdeResult};
use crate::error::{Error, Result};
use crate::invariant::InvariantBasis;

#[derive(Clone, Debug, PartialEq)]
pub struct NumericConfig {
    /// Polyline whose first vertex is the base point.
    pub path: Vec<Complex64>,
    /// Relative tolerance on the residual; the integrator works at `τ/100`.
    pub tolerance: f64,
    /// Minimal distance between the path and any singular point.
    pub margin: f64,
    /// Newton starts.
    pub starts: usize,
    pub seed: u64,
}

/// `0.5+0.5i → 0.5+1.5i → 2+1.5i → 2.5+0.5i`, in the upper half plane and
/// clear of `0` and `1`.
pub fn default_path() -> Vec<Complex64> {
    [(0.5, 0.5), (0.5, 1.5), (2.0, 1.5), (2.5, 0.5)]
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect()
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            path: default_path(),
            tolerance: 1e-6,
            margin: 0.1,
            starts: 64,
            seed: 168,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub base: Complex64,
    pub path: Vec<Complex64>,
    pub seed: u64,
    pub initial: InitialPoint,
    /// `|L(y)| / (1 + Σ|c_k y^(k)|)` at the base point for the derived initials.
    pub ode_residual_at_base: f64,
    /// Maximum over samples and generators of `|F_i(y) - f_i| / (1 + |f_i|)`.
    pub residual: f64,
    /// Per generator; `None` when the pullback is omitted and not implied.
    pub per_generator: Vec<Option<f64>>,
    pub samples: usize,
    pub verified: bool,
}

fn distance_to_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * d.conj()).re / len2;
    (p - (a + d * t.clamp(0.0, 1.0))).norm()
}

/// Approximate finite poles of the coefficients.
fn pole_estimates(ode: &OdeResult<Rational>, s: u32) -> Vec<Complex64> {
    let mut out = Vec::new();
    for c in ode.coeffs() {
        let den = c.lift(s);
        let coeffs: Vec<Complex64> = den
            .denom()
            .coeffs()
            .iter()
            .map(|q| Complex64::new(super::eval::to_f64(q), 0.0))
            .collect();
        out.extend(complex_roots(&coeffs).into_iter().map(|w| w.powu(s)));
    }
    out
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

/// Checks the equation numerically: solves `F(y(z0)) = f(z0)` for the
/// primary generators, derives consistent initial derivatives from the
/// invariant system, integrates the equation along the path and compares
/// every generator with its pullback at each accepted step.
pub fn verify(
    basis: &InvariantBasis,
    ode: &OdeResult<Rational>,
    pullbacks: &[Option<RamifiedFunction<Rational>>],
    config: &NumericConfig,
) -> Result<VerifyReport> {
    let n = ode.order();
    if n != basis.nvars() || pullbacks.len() != basis.len() {
        return Err(Error::InvalidInput("the equation, basis and pullbacks do not match".into()));
    }
    if config.tolerance <= 0.0 || config.path.len() < 2 {
        return Err(Error::InvalidInput("need a positive tolerance and a path with two vertices".into()));
    }
    let s = pullbacks
        .iter()
        .flatten()
        .fold(ode.ramification(), |acc, f| acc.lcm(&f.ramification()));
    for p in pole_estimates(ode, s) {
        for seg in config.path.windows(2) {
            if distance_to_segment(p, seg[0], seg[1]) < config.margin {
                return Err(Error::InvalidInput(alloc::format!(
                    "the path passes within {} of the singular point {} + {}i",
                    config.margin,
                    p.re,
                    p.im
                )));
            }
        }
    }
    let base = config.path[0];
    let w0 = Branch::principal(s, base).w();

    let primary: Vec<RamifiedFunction<Rational>> = basis
        .primary()
        .iter()
        .map(|&i| pullbacks[i].clone().ok_or_else(|| Error::MissingPullback { name: basis.names()[i].clone() }))
        .collect::<Result<_>>()?;
    // Taylor coefficients of the primary pullbacks at the base point.
    let f_taylor: Vec<Vec<Complex64>> = primary
        .iter()
        .map(|f| {
            let mut d = f.clone();
            (0..=n)
                .map(|k| {
                    let v = NumFunc::new(&d, s).eval(w0) / factorial(k);
                    d = d.derivative();
                    v
                })
                .collect()
        })
        .collect();
    let sys = NumSystem::new(&basis.primary_generators());
    let target: Vec<Complex64> = f_taylor.iter().map(|t| t[0]).collect();
    let initial = initial_point(&sys, &target, config.starts, config.seed)?;
    let series = taylor_solution(&sys, &initial.x, &f_taylor, n + 1)?;
    let derivs: Vec<Vec<Complex64>> = series
        .iter()
        .map(|row| row.iter().enumerate().map(|(k, v)| v * factorial(k)).collect())
        .collect();

    let companion = Companion::new(ode, s, base);
    let mut state = Vec::with_capacity(n * n);
    for row in &derivs {
        state.extend_from_slice(&row[..n]);
    }
    let rhs = companion.rhs(base, &state);
    let ode_residual_at_base = (0..n)
        .map(|j| {
            let lhs = derivs[j][n] - rhs[j * n + n - 1];
            lhs.norm() / (1.0 + derivs[j][n].norm() + rhs[j * n + n - 1].norm())
        })
        .fold(0.0, f64::max);

    let traj = integrate(ode, s, &config.path, state, config.tolerance / 100.0)?;
    let (residual, per_generator) = residual(basis, pullbacks, s, n, &traj);
    Ok(VerifyReport {
        base,
        path: config.path.clone(),
        seed: config.seed,
        initial,
        ode_residual_at_base,
        residual,
        per_generator,
        samples: traj.samples.len(),
        verified: residual < config.tolerance,
    })
}

/// Maximum relative deviation `|F_i(y) - f_i| / (1 + |f_i|)` along the
/// trajectory. An omitted pullback whose square is implied by a syzygy is
/// compared through `F_i(y)²`.
pub fn residual(
    basis: &InvariantBasis,
    pullbacks: &[Option<RamifiedFunction<Rational>>],
    s: u32,
    n: usize,
    traj: &Trajectory,
) -> (f64, Vec<Option<f64>>) {
    let checks: Vec<Option<(NumPoly, NumFunc, bool)>> = (0..basis.len())
        .map(|i| {
            let poly = NumPoly::new(&basis.generators()[i]);
            match &pullbacks[i] {
                Some(f) => Some((poly, NumFunc::new(f, s), false)),
                None => implied_square(basis, pullbacks, i).map(|rho| (poly, NumFunc::new(&rho, s), true)),
            }
        })
        .collect();
    let mut per: Vec<Option<f64>> = checks.iter().map(|c| c.as_ref().map(|_| 0.0)).collect();
    for smp in &traj.samples {
        let y: Vec<Complex64> = (0..n).map(|j| smp.state[j * n]).collect();
        for (i, c) in checks.iter().enumerate() {
            let Some((poly, f, squared)) = c else { continue };
            let mut v = poly.eval(&y);
            if *squared {
                v *= v;
            }
            let t = f.eval(smp.w);
            let dev = (v - t).norm() / (1.0 + t.norm());
            let slot = per[i].as_mut().unwrap();
            *slot = slot.max(if dev.is_nan() { f64::INFINITY } else { dev });
        }
    }
    let max = per.iter().flatten().fold(0.0, |a: f64, &b| a.max(b));
    (max, per)
}

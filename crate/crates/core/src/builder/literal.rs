use alloc::vec::Vec;

use super::context::DerivationContext;
use crate::algebra::{nullspace_cofactor, Field, MPoly, Matrix, RamifiedFunction, Rational, Ring};
use crate::error::{Error, Result};
use crate::invariant::jacobian;

type Coeff<K> = RamifiedFunction<K>;

/// The table `X_{i,j}` of the first-order system, stored as numerators over
/// powers of the Jacobian determinant `D`: `X_{i,j} = N_{i,j} / D^{k_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct XijTable<K> {
    det: MPoly<Rational>,
    numerators: Vec<Vec<MPoly<Coeff<K>>>>,
    powers: Vec<u32>,
}

impl<K: Field> XijTable<K> {
    pub fn order(&self) -> usize {
        self.numerators.len() - 1
    }

    /// Jacobian determinant `D` of the primary generators.
    pub fn jacobian_determinant(&self) -> &MPoly<Rational> {
        &self.det
    }

    /// Numerators of column `j`.
    pub fn column(&self, j: usize) -> &[MPoly<Coeff<K>>] {
        &self.numerators[j]
    }

    /// Exponent of `D` in the denominators of column `j`.
    pub fn power(&self, j: usize) -> u32 {
        self.powers[j]
    }
}

fn lift<K: Field>(p: &MPoly<Rational>) -> MPoly<Coeff<K>> {
    p.map_coeffs(Coeff::from_rational)
}

/// Runs the recursion `X_{·,j} = (∂X_{·,j-1}/∂X) J⁻¹ δf + δX_{·,j-1}` with
/// `J⁻¹ = adj(J)/D`.
pub fn build_xij<K: Field>(
    ctx: &DerivationContext<K>,
    generators: &[MPoly<Rational>],
    pullbacks: &[RamifiedFunction<K>],
) -> Result<XijTable<K>> {
    let n = generators.len();
    if pullbacks.len() != n || generators.iter().any(|g| g.nvars() != n) {
        return Err(Error::InvalidInput(
            "need one pullback per primary generator, in as many variables".into(),
        ));
    }
    let j = jacobian(generators);
    let det = j.det();
    if det.is_zero() {
        return Err(Error::DegenerateGenerators);
    }
    let adj = j.adjugate().map(lift::<K>);
    let df: Vec<MPoly<Coeff<K>>> = pullbacks
        .iter()
        .map(|f| MPoly::constant(n, ctx.delta(f)))
        .collect();
    let v = adj.mul_vec(&df);
    let d = lift::<K>(&det);
    let d_sq = d.mul(&d);
    let grad_d: Vec<MPoly<Coeff<K>>> = (0..n).map(|l| d.partial(l)).collect();

    let mut numerators = Vec::with_capacity(n + 1);
    numerators.push((0..n).map(|i| MPoly::var(n, i)).collect::<Vec<_>>());
    let mut powers = alloc::vec![0u32];
    if n > 0 {
        numerators.push(v.clone());
        powers.push(1);
    }
    for _ in 2..=n {
        let prev = numerators.last().unwrap();
        let k = *powers.last().unwrap();
        let kk = MPoly::constant(n, Coeff::from_i64(k as i64));
        let next: Vec<MPoly<Coeff<K>>> = prev
            .iter()
            .map(|ni| {
                let mut acc = ctx.delta_poly(ni).mul(&d_sq);
                for l in 0..n {
                    let term = ni.partial(l).mul(&d).sub(&kk.mul(ni).mul(&grad_d[l]));
                    acc = acc.add(&term.mul(&v[l]));
                }
                acc
            })
            .collect();
        numerators.push(next);
        powers.push(k + 2);
    }
    Ok(XijTable {
        det,
        numerators,
        powers,
    })
}

/// Signed maximal minors of the table, rescaled to polynomials.
///
/// Returns `C_i` proportional to the minors of `[X_{i,j}]`; the common
/// factor is `∏_j D^{-k_j}`, so `Σ_j C_j X_{i,j} = 0` for every row.
pub fn solve_dependence<K: Field>(table: &XijTable<K>) -> Result<Vec<MPoly<Coeff<K>>>> {
    let n = table.order();
    let m = Matrix::from_fn(n, n + 1, |i, j| table.numerators[j][i].clone());
    let minors = nullspace_cofactor(&m)?;
    let d = lift::<K>(&table.det);
    Ok(minors
        .into_iter()
        .zip(&table.powers)
        .map(|(c, &k)| c.mul(&d.pow(k)))
        .collect())
}

use alloc::vec::Vec;

use crate::algebra::{MPoly, Rational};
use crate::error::Result;
use crate::invariant::{hessian, GeneratorSymbolPoly, InvariantBasis, Rewriter};

/// Christoffel-type symbols of the frame `y_k = J⁻¹ e_k` attached to the
/// primary generators, as invariant rational functions of the generators.
///
/// Along a solution `y` of `F(y) = f`, `δ y_k = Σ_{m,p} Γ^m_{kp} f'_p y_m`
/// with `Γ^m_{kp} = -y_kᵀ H(F_m) y_p`, and `y = Σ_k d_k f_k y_k` by Euler's
/// identity. The numerators `-adj_kᵀ H(F_m) adj_p` are invariant polynomials;
/// they are rewritten in the generators together with `D²`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    n: usize,
    degrees: Vec<u32>,
    denominator: GeneratorSymbolPoly<Rational>,
    numerators: Vec<GeneratorSymbolPoly<Rational>>,
}

impl Connection {
    pub fn new(basis: &InvariantBasis) -> Result<Self> {
        let n = basis.nvars();
        let fs = basis.primary_generators();
        let degrees = basis.primary_degrees();
        let jac = basis.jacobian();
        let det = basis.jacobian_determinant()?;
        let adj = jac.adjugate();
        let hessians: Vec<_> = fs.iter().map(hessian).collect();
        let mut rw = Rewriter::new(basis);
        let det_deg = det.total_degree().unwrap_or(0);
        // D need not be invariant when the group is not in SL; D^e is for
        // some e, and the numerators are then carried with D^(e-2).
        let max_deg = degrees.iter().copied().max().unwrap_or(1);
        let mut extra = MPoly::one(n);
        let mut power = det.mul(&det);
        let mut e = 2;
        let denominator = loop {
            match rw.rewrite_homogeneous(&power, e * det_deg) {
                Ok(q) => break q,
                Err(err) if e >= 2 + 2 * max_deg => return Err(err),
                Err(_) => {
                    power = power.mul(&det);
                    extra = extra.mul(&det);
                    e += 1;
                }
            }
        };
        let mut numerators = alloc::vec![MPoly::zero(basis.len()); n * n * n];
        for m in 0..n {
            for k in 0..n {
                let hk: Vec<MPoly<Rational>> = (0..n)
                    .map(|j| {
                        (0..n).fold(MPoly::zero(n), |acc, i| {
                            acc.add(&adj.get(i, k).mul(hessians[m].get(i, j)))
                        })
                    })
                    .collect();
                for p in k..n {
                    let num = (0..n)
                        .fold(MPoly::zero(n), |acc, j| acc.add(&hk[j].mul(adj.get(j, p))))
                        .neg()
                        .mul(&extra);
                    let q = match num.total_degree() {
                        None => MPoly::zero(basis.len()),
                        Some(d) => rw.rewrite_homogeneous(&num, d)?,
                    };
                    numerators[(m * n + p) * n + k] = q.clone();
                    numerators[(m * n + k) * n + p] = q;
                }
            }
        }
        Ok(Connection {
            n,
            degrees,
            denominator,
            numerators,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Degrees of the primary generators.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `D^e` written in the generators, with `e ≥ 2` the least power that is
    /// invariant.
    pub fn denominator(&self) -> &GeneratorSymbolPoly<Rational> {
        &self.denominator
    }

    /// Numerator of `Γ^m_{kp}` over [`Self::denominator`], written in the
    /// generators.
    pub fn numerator(&self, m: usize, k: usize, p: usize) -> &GeneratorSymbolPoly<Rational> {
        &self.numerators[(m * self.n + k) * self.n + p]
    }

    /// The same connection with each numerator `q` at `(m, k, p)` replaced
    /// by `f(m, k, p, q)`, e.g. another representative modulo the syzygies.
    pub fn map_numerators(
        &self,
        f: impl Fn(usize, usize, usize, &GeneratorSymbolPoly<Rational>) -> GeneratorSymbolPoly<Rational>,
    ) -> Self {
        let n = self.n;
        let numerators = (0..n * n * n)
            .map(|i| f(i / (n * n), (i / n) % n, i % n, &self.numerators[i]))
            .collect();
        Connection {
            numerators,
            ..self.clone()
        }
    }
}

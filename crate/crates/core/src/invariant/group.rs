use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::algebra::{CycNum, Field, MPoly, Matrix, Rational, Ring};
use crate::error::{Error, Result};

/// A finite linear group given by generator matrices over a cyclotomic field.
///
/// Generators whose determinant is a perfect `n`-th power `λ^n` of a
/// recognizable scalar are rescaled by `1/λ` at load time, so a printed
/// matrix that is unimodular only up to a scalar lands in `SL_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSpec {
    dimension: usize,
    generators: Vec<Matrix<CycNum>>,
    scalings: Vec<CycNum>,
    order: u64,
}

impl GroupSpec {
    pub fn new(dimension: usize, generators: Vec<Matrix<CycNum>>, order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("group order must be positive".into()));
        }
        let mut normalized = Vec::with_capacity(generators.len());
        let mut scalings = Vec::with_capacity(generators.len());
        for (i, g) in generators.into_iter().enumerate() {
            if g.rows() != dimension || g.cols() != dimension {
                return Err(Error::InvalidInput(format!(
                    "generator {i} is not {dimension}x{dimension}"
                )));
            }
            let det = g.det();
            if det.is_zero() {
                return Err(Error::InvalidInput(format!("generator {i} is singular")));
            }
            match unimodular_scaling(&g, &det) {
                Some(lambda) if !lambda.is_one() => {
                    let inv = lambda.inv().expect("nonzero scaling");
                    normalized.push(g.map(|e| e.mul(&inv)));
                    scalings.push(lambda);
                }
                _ => {
                    normalized.push(g);
                    scalings.push(CycNum::one());
                }
            }
        }
        Ok(GroupSpec {
            dimension,
            generators: normalized,
            scalings,
            order,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Generators after unimodular normalization.
    pub fn generators(&self) -> &[Matrix<CycNum>] {
        &self.generators
    }

    /// The scalar each input generator was divided by (1 when untouched).
    pub fn scalings(&self) -> &[CycNum] {
        &self.scalings
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn with_order(mut self, order: u64) -> Self {
        self.order = order;
        self
    }

    /// Whether every stored generator has determinant 1.
    pub fn is_unimodular(&self) -> bool {
        self.generators.iter().all(|g| g.det().is_one())
    }

    pub fn require_unimodular(&self) -> Result<()> {
        match self.generators.iter().position(|g| !g.det().is_one()) {
            Some(index) => Err(Error::NotUnimodular { index }),
            None => Ok(()),
        }
    }
}

/// Searches for `λ` with `λ^n = det(g)`.
///
/// Candidates are `u * tr(g) / j` for small `j`, and the rational `n`-th root
/// of a rational determinant, times roots of unity `u`. Roots of unity already
/// present in the field of definition are tried first so that the rescaled
/// matrix stays over the same field whenever possible.
fn unimodular_scaling(g: &Matrix<CycNum>, det: &CycNum) -> Option<CycNum> {
    if det.is_one() {
        return Some(CycNum::one());
    }
    let n = g.rows() as u32;
    let m = (0..g.rows())
        .flat_map(|i| (0..g.cols()).map(move |j| (i, j)))
        .fold(det.conductor(), |acc, (i, j)| acc.lcm(&g.get(i, j).conductor()));
    let mut bases: Vec<CycNum> = Vec::new();
    if let Some(q) = det.as_rational() {
        if let Some(root) = rational_root(&q, n) {
            bases.push(CycNum::from_rational(&root));
        }
    }
    let trace = (0..g.rows()).fold(CycNum::zero(), |acc, i| acc.add(g.get(i, i)));
    if !trace.is_zero() {
        for j in 1..=3 {
            bases.push(trace.scale(&Rational::new(1.into(), j.into())));
        }
    }
    let small = m.lcm(&2);
    for field in [small, small * n] {
        for base in &bases {
            for k in 0..field {
                let lambda = CycNum::zeta(field, k as i64).mul(base);
                if lambda.pow(n) == *det {
                    return Some(lambda);
                }
            }
        }
    }
    None
}

fn rational_root(q: &Rational, n: u32) -> Option<Rational> {
    use num_traits::Signed;
    let neg = q.is_negative();
    if neg && n.is_multiple_of(2) {
        return None;
    }
    let num = q.numer().abs().nth_root(n);
    let den = q.denom().nth_root(n);
    let r = Rational::new(if neg { -num } else { num }, den);
    (Ring::pow(&r, n) == *q).then_some(r)
}

/// `λ` with `p(g X) = λ p(X)`, under the action `X_i -> Σ_j g_ij X_j`; `None`
/// when `p(g X)` is not a multiple of `p`.
pub fn check_invariance(p: &MPoly<Rational>, g: &Matrix<CycNum>) -> Option<CycNum> {
    let n = p.nvars();
    assert_eq!(g.rows(), n, "matrix size must match the variable count");
    let pc = p.map_coeffs(CycNum::from_rational);
    let Some((lead, lc)) = pc.leading().map(|(m, c)| (m.clone(), c.clone())) else {
        return Some(CycNum::one());
    };
    let images: Vec<MPoly<CycNum>> = (0..n)
        .map(|i| {
            (0..n).fold(MPoly::zero(n), |acc, j| {
                acc.add(&MPoly::var(n, j).mul_scalar(g.get(i, j)))
            })
        })
        .collect();
    let q = pc.substitute_horner(&images);
    let lambda = q.coeff(lead.exps()).div(&lc)?;
    (q == pc.mul_scalar(&lambda)).then_some(lambda)
}

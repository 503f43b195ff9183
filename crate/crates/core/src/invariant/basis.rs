use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{MPoly, Matrix, Rational, Ring};
use crate::error::{Error, Result};

/// Polynomial in abstract generator symbols `Φ_1, ..., Φ_N`.
pub type GeneratorSymbolPoly<K> = MPoly<K>;

/// Generators `F_1, ..., F_N` of an invariant ring, their degrees, a primary
/// subset with nonvanishing Jacobian, and known syzygies among them.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantBasis {
    nvars: usize,
    names: Vec<String>,
    generators: Vec<MPoly<Rational>>,
    degrees: Vec<u32>,
    primary: Vec<usize>,
    syzygies: Vec<GeneratorSymbolPoly<Rational>>,
}

impl InvariantBasis {
    /// Validates homogeneity, declared degrees, the primary Jacobian and
    /// every syzygy (by full expansion).
    pub fn new(
        names: Vec<String>,
        generators: Vec<MPoly<Rational>>,
        degrees: Vec<u32>,
        primary: Vec<usize>,
        syzygies: Vec<GeneratorSymbolPoly<Rational>>,
    ) -> Result<Self> {
        let basis = Self::new_unchecked(names, generators, degrees, primary, syzygies)?;
        basis.jacobian_determinant()?;
        for (i, s) in basis.syzygies.iter().enumerate() {
            if !basis.expand(s).is_zero() {
                return Err(Error::InvalidInput(format!(
                    "syzygy {i} does not vanish on the generators"
                )));
            }
        }
        Ok(basis)
    }

    /// Checks shapes and degrees only.
    pub fn new_unchecked(
        names: Vec<String>,
        generators: Vec<MPoly<Rational>>,
        degrees: Vec<u32>,
        primary: Vec<usize>,
        syzygies: Vec<GeneratorSymbolPoly<Rational>>,
    ) -> Result<Self> {
        let n_gen = generators.len();
        if n_gen == 0 {
            return Err(Error::InvalidInput("no generators".into()));
        }
        if names.len() != n_gen || degrees.len() != n_gen {
            return Err(Error::InvalidInput(
                "names, generators and degrees must have equal length".into(),
            ));
        }
        let nvars = generators[0].nvars();
        for (i, (g, &d)) in generators.iter().zip(&degrees).enumerate() {
            if g.nvars() != nvars {
                return Err(Error::InvalidInput(format!(
                    "generator {} has a different variable count",
                    names[i]
                )));
            }
            if g.is_zero() || !g.is_homogeneous() || g.total_degree() != Some(d) {
                return Err(Error::InvalidInput(format!(
                    "generator {} is not homogeneous of degree {d}",
                    names[i]
                )));
            }
        }
        if primary.len() != nvars || primary.iter().any(|&i| i >= n_gen) {
            return Err(Error::InvalidInput(format!(
                "the primary subset must list {nvars} distinct generator indices"
            )));
        }
        let mut seen = primary.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != nvars {
            return Err(Error::InvalidInput("primary indices repeat".into()));
        }
        if syzygies.iter().any(|s| s.nvars() != n_gen) {
            return Err(Error::InvalidInput(
                "syzygies must be polynomials in one symbol per generator".into(),
            ));
        }
        Ok(InvariantBasis {
            nvars,
            names,
            generators,
            degrees,
            primary,
            syzygies,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[MPoly<Rational>] {
        &self.generators
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn primary(&self) -> &[usize] {
        &self.primary
    }

    pub fn syzygies(&self) -> &[GeneratorSymbolPoly<Rational>] {
        &self.syzygies
    }

    pub fn primary_generators(&self) -> Vec<MPoly<Rational>> {
        self.primary.iter().map(|&i| self.generators[i].clone()).collect()
    }

    pub fn primary_degrees(&self) -> Vec<u32> {
        self.primary.iter().map(|&i| self.degrees[i]).collect()
    }

    /// Substitutes the concrete generators for the symbols.
    pub fn expand<K: Ring>(&self, q: &GeneratorSymbolPoly<K>) -> MPoly<K> {
        let images: Vec<MPoly<K>> = self
            .generators
            .iter()
            .map(|g| g.map_coeffs(|c| K::from_rational(c)))
            .collect();
        q.substitute(&images)
    }

    /// Jacobian matrix of the primary generators.
    pub fn jacobian(&self) -> Matrix<MPoly<Rational>> {
        jacobian(&self.primary_generators())
    }

    /// Determinant of the primary Jacobian; an error when it vanishes.
    pub fn jacobian_determinant(&self) -> Result<MPoly<Rational>> {
        let d = self.jacobian().det();
        if d.is_zero() {
            Err(Error::DegenerateGenerators)
        } else {
            Ok(d)
        }
    }
}

/// Matrix of partial derivatives `∂F_i/∂X_j`.
pub fn jacobian<K: Ring>(fs: &[MPoly<K>]) -> Matrix<MPoly<K>> {
    let n = fs.first().map_or(0, MPoly::nvars);
    Matrix::from_fn(fs.len(), n, |i, j| fs[i].partial(j))
}

/// Matrix of second partial derivatives.
pub fn hessian<K: Ring>(f: &MPoly<K>) -> Matrix<MPoly<K>> {
    let n = f.nvars();
    let grad: Vec<MPoly<K>> = (0..n).map(|i| f.partial(i)).collect();
    Matrix::from_fn(n, n, |i, j| grad[i].partial(j))
}

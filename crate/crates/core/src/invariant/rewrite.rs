use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_integer::Integer;

use super::basis::{GeneratorSymbolPoly, InvariantBasis};
use crate::algebra::{
    rank_profile, Field, MPoly, Matrix, Monomial, RamifiedFunction, RatFunc, Rational, Ring,
    PRIMES,
};
use crate::error::{Error, Result};

/// Rewrites invariant polynomials as polynomials in the generator symbols by
/// a per-degree linear ansatz.
///
/// Expansions of symbol monomials are cached across calls, each one built
/// from a previous one by a single multiplication.
pub struct Rewriter<'a> {
    basis: &'a InvariantBasis,
    expansions: BTreeMap<Vec<u32>, MPoly<Rational>>,
}

impl<'a> Rewriter<'a> {
    pub fn new(basis: &'a InvariantBasis) -> Self {
        Rewriter {
            basis,
            expansions: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> &InvariantBasis {
        self.basis
    }

    /// Exponent vectors `a` with `Σ a_k d_k = d`, ordered by the exponent of
    /// the last symbol, then the one before it, and so on.
    pub fn symbol_monomials(&self, d: u32) -> Vec<Vec<u32>> {
        let degs = self.basis.degrees();
        let mut out = Vec::new();
        let mut cur = alloc::vec![0u32; degs.len()];
        enumerate(degs, 0, d, &mut cur, &mut out);
        out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        out
    }

    /// `∏ F_k^{a_k}` as a polynomial in the `X` variables.
    pub fn expansion(&mut self, exps: &[u32]) -> &MPoly<Rational> {
        if !self.expansions.contains_key(exps) {
            let value = match exps.iter().position(|&e| e > 0) {
                None => MPoly::one(self.basis.nvars()),
                Some(k) => {
                    let mut lower = exps.to_vec();
                    lower[k] -= 1;
                    let base = self.expansion(&lower).clone();
                    base.mul(&self.basis.generators()[k])
                }
            };
            self.expansions.insert(exps.to_vec(), value);
        }
        &self.expansions[exps]
    }

    /// Rewrites a polynomial whose homogeneous components are invariant.
    pub fn rewrite<K: Field>(&mut self, p: &MPoly<K>) -> Result<GeneratorSymbolPoly<K>> {
        let mut acc = MPoly::zero(self.basis.len());
        for (d, part) in p.homogeneous_components() {
            acc = acc.add(&self.rewrite_homogeneous(&part, d)?);
        }
        Ok(acc)
    }

    /// Rewrites a homogeneous polynomial of degree `d`.
    pub fn rewrite_homogeneous<K: Field>(
        &mut self,
        p: &MPoly<K>,
        d: u32,
    ) -> Result<GeneratorSymbolPoly<K>> {
        let nsym = self.basis.len();
        if p.is_zero() {
            return Ok(MPoly::zero(nsym));
        }
        let cols = self.symbol_monomials(d);
        if cols.is_empty() {
            return Err(Error::NotExpressible { degree: d });
        }
        let mut row_of: BTreeMap<Monomial, usize> = BTreeMap::new();
        for c in &cols {
            for (m, _) in self.expansion(c).terms() {
                let next = row_of.len();
                row_of.entry(m.clone()).or_insert(next);
            }
        }
        if p.terms().any(|(m, _)| !row_of.contains_key(m)) {
            return Err(Error::NotExpressible { degree: d });
        }
        let mut rows = alloc::vec![alloc::vec![Rational::zero(); cols.len()]; row_of.len()];
        for (j, c) in cols.iter().enumerate() {
            for (m, v) in self.expansions[c].terms() {
                rows[row_of[m]][j] = v.clone();
            }
        }
        let mut rhs = alloc::vec![K::zero(); row_of.len()];
        for (m, v) in p.terms() {
            rhs[row_of[m]] = v.clone();
        }
        for &prime in PRIMES.iter() {
            let Some((prow, pcol)) = rank_profile(&rows, cols.len(), prime) else {
                continue;
            };
            let square = Matrix::from_fn(prow.len(), pcol.len(), |i, j| rows[prow[i]][pcol[j]].clone());
            let Some(inv) = square.inverse() else {
                continue;
            };
            let q = MPoly::from_terms(
                nsym,
                pcol.iter().enumerate().map(|(j, &c)| {
                    let x = prow.iter().enumerate().fold(K::zero(), |acc, (i, &r)| {
                        let a = inv.get(j, i);
                        if a.is_zero() || rhs[r].is_zero() {
                            acc
                        } else {
                            acc.add(&rhs[r].scale(a))
                        }
                    });
                    (Monomial::new(cols[c].clone()), x)
                }),
            );
            if self.expand_cached(&q) == *p {
                return Ok(q);
            }
        }
        Err(Error::NotExpressible { degree: d })
    }

    /// `Q(F_1, ..., F_N)` using the cached monomial expansions.
    pub fn expand_cached<K: Ring>(&mut self, q: &GeneratorSymbolPoly<K>) -> MPoly<K> {
        let mut acc = MPoly::zero(self.basis.nvars());
        for (m, c) in q.terms() {
            let e = self.expansion(m.exps()).map_coeffs(|v| K::from_rational(v));
            acc = acc.add(&e.mul_scalar(c));
        }
        acc
    }
}

fn enumerate(degs: &[u32], k: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if k == degs.len() {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let dk = degs[k];
    for a in 0..=remaining / dk {
        cur[k] = a;
        enumerate(degs, k + 1, remaining - a * dk, cur, out);
    }
    cur[k] = 0;
}

/// `q(f_1, ..., f_N)` for rational-coefficient `q`, over a single common
/// denominator. Symbols that do not occur in `q` may be left unset.
pub fn eval_symbols<K: Field>(
    q: &GeneratorSymbolPoly<Rational>,
    args: &[Option<RamifiedFunction<K>>],
    names: &[alloc::string::String],
) -> Result<RamifiedFunction<K>> {
    let n = q.nvars();
    let mut used = alloc::vec![false; n];
    for (m, _) in q.terms() {
        for (i, &e) in m.exps().iter().enumerate() {
            used[i] |= e > 0;
        }
    }
    let mut r = 1u32;
    for i in 0..n {
        match (&args[i], used[i]) {
            (Some(f), _) => r = r.lcm(&f.ramification()),
            (None, true) => {
                return Err(Error::MissingPullback {
                    name: names.get(i).cloned().unwrap_or_default(),
                })
            }
            (None, false) => {}
        }
    }
    let lifted: Vec<RatFunc<K>> = args
        .iter()
        .map(|a| a.as_ref().map_or_else(RatFunc::zero, |f| f.lift(r)))
        .collect();
    Ok(RamifiedFunction::new(r, RatFunc::eval_mpoly(q, &lifted)))
}

/// Outcome of substituting pullbacks into one syzygy.
#[derive(Clone, Debug, PartialEq)]
pub struct SyzygyCheck {
    pub index: usize,
    /// `None` when a pullback the syzygy needs was not supplied.
    pub holds: Option<bool>,
}

/// Substitutes the pullbacks into every declared syzygy.
pub fn validate_pullbacks<K: Field>(
    basis: &InvariantBasis,
    pullbacks: &[Option<RamifiedFunction<K>>],
) -> Vec<SyzygyCheck> {
    basis
        .syzygies()
        .iter()
        .enumerate()
        .map(|(index, s)| SyzygyCheck {
            index,
            holds: eval_symbols(s, pullbacks, basis.names())
                .ok()
                .map(|v| v.is_zero()),
        })
        .collect()
}

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;

use super::context::setup_derivation;
use super::frame::Connection;
use super::literal::{build_xij, solve_dependence};
use crate::algebra::{nullspace_cofactor, Field, Matrix, RamifiedFunction, Rational, Ring};
use crate::error::{Error, Result};
use crate::invariant::{
    eval_symbols, validate_pullbacks, GeneratorSymbolPoly, GroupSpec, InvariantBasis, Rewriter,
};

/// How the dependence coefficients are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Coordinates of `δ^j y` in the frame `J⁻¹ e_k`, with the connection
    /// rewritten once per basis. Polynomials stay at degree at most
    /// `2 deg D + max d`.
    #[default]
    Frame,
    /// The table `X_{i,j}` expanded as polynomials in `X`, its maximal
    /// minors rewritten in the generators. Exponentially larger; meant for
    /// small cases and as a cross-check.
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructOptions {
    pub strategy: Strategy,
    /// Reject pullbacks that violate a declared syzygy.
    pub validate: bool,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            strategy: Strategy::Frame,
            validate: true,
        }
    }
}

/// Inputs a construction was run with.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance<K> {
    pub names: Vec<String>,
    pub degrees: Vec<u32>,
    pub primary: Vec<usize>,
    pub pullbacks: Vec<Option<RamifiedFunction<K>>>,
    pub strategy: Strategy,
}

/// `δ^n y + c_{n-1} δ^{n-1} y + ... + c_0 y = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct OdeResult<K> {
    coeffs: Vec<RamifiedFunction<K>>,
    provenance: Option<Provenance<K>>,
}

impl<K: Field> OdeResult<K> {
    /// Equation with the given `c_0, ..., c_{n-1}`.
    pub fn new(coeffs: Vec<RamifiedFunction<K>>) -> Self {
        OdeResult {
            coeffs,
            provenance: None,
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_0, ..., c_{n-1}`.
    pub fn coeffs(&self) -> &[RamifiedFunction<K>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &RamifiedFunction<K> {
        &self.coeffs[i]
    }

    pub fn provenance(&self) -> Option<&Provenance<K>> {
        self.provenance.as_ref()
    }

    /// Least common ramification of the coefficients (1 when they all
    /// descend to rational functions of `z`).
    pub fn ramification(&self) -> u32 {
        self.coeffs
            .iter()
            .fold(1, |acc, c| acc.lcm(&c.ramification()))
    }

    pub fn descends_to_z(&self) -> bool {
        self.ramification() == 1
    }
}

/// Evaluates symbol polynomials at the pullbacks. A single omitted symbol
/// `Φ_j` is allowed when some syzygy reads `α Φ_j² + R = 0` with `R` free of
/// `Φ_j`: values are then computed in `K(φ)`, `φ² = -R(f)/α`, and ratios must
/// land back in `K`.
struct SymbolEvaluator<'a, K> {
    basis: &'a InvariantBasis,
    args: Vec<Option<RamifiedFunction<K>>>,
    implicit: Option<(usize, RamifiedFunction<K>)>,
}

type Pair<K> = (RamifiedFunction<K>, RamifiedFunction<K>);

impl<'a, K: Field> SymbolEvaluator<'a, K> {
    fn new(basis: &'a InvariantBasis, args: &[Option<RamifiedFunction<K>>]) -> Self {
        let missing: Vec<usize> = (0..args.len()).filter(|&i| args[i].is_none()).collect();
        let mut implicit = None;
        for &j in &missing {
            for s in basis.syzygies() {
                if let Some(rho) = quadratic_value(s, j, args, basis) {
                    implicit = Some((j, rho));
                    break;
                }
            }
            if implicit.is_some() {
                break;
            }
        }
        SymbolEvaluator {
            basis,
            args: args.to_vec(),
            implicit,
        }
    }

    fn names(&self) -> &[String] {
        self.basis.names()
    }

    /// `(a, b)` with `q(f) = a + b φ`.
    fn eval_rational(&self, q: &GeneratorSymbolPoly<Rational>) -> Result<Pair<K>> {
        let Some((j, rho)) = &self.implicit else {
            return Ok((eval_symbols(q, &self.args, self.names())?, RamifiedFunction::zero()));
        };
        let mut parts: alloc::collections::BTreeMap<u32, GeneratorSymbolPoly<Rational>> =
            alloc::collections::BTreeMap::new();
        for (m, c) in q.terms() {
            let mut e = m.exps().to_vec();
            let k = core::mem::take(&mut e[*j]);
            let part = parts
                .entry(k)
                .or_insert_with(|| GeneratorSymbolPoly::zero(q.nvars()));
            *part = part.add(&GeneratorSymbolPoly::from_terms(
                q.nvars(),
                [(crate::algebra::Monomial::new(e), c.clone())],
            ));
        }
        let (mut a, mut b) = (RamifiedFunction::zero(), RamifiedFunction::zero());
        for (k, part) in parts {
            let v = eval_symbols(&part, &self.args, self.names())?.mul(&rho.pow(k / 2));
            if k % 2 == 0 {
                a = a.add(&v);
            } else {
                b = b.add(&v);
            }
        }
        Ok((a, b))
    }

    fn eval_general(&self, q: &GeneratorSymbolPoly<RamifiedFunction<K>>) -> Result<Pair<K>> {
        let (mut a, mut b) = (RamifiedFunction::zero(), RamifiedFunction::zero());
        for (m, c) in q.terms() {
            let mut t = c.clone();
            let mut odd = false;
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match (&self.args[i], &self.implicit) {
                    (Some(f), _) => t = t.mul(&f.pow(e)),
                    (None, Some((j, rho))) if *j == i => {
                        t = t.mul(&rho.pow(e / 2));
                        odd = e % 2 == 1;
                    }
                    _ => {
                        return Err(Error::MissingPullback {
                            name: self.names()[i].clone(),
                        })
                    }
                }
            }
            if odd {
                b = b.add(&t);
            } else {
                a = a.add(&t);
            }
        }
        Ok((a, b))
    }

    /// `(a + bφ)/(c + dφ)`, which must lie in `K`.
    fn ratio(&self, num: &Pair<K>, den: &Pair<K>) -> Result<RamifiedFunction<K>> {
        let (a, b) = num;
        let (c, d) = den;
        if b.is_zero() && d.is_zero() {
            return a.div(c).ok_or(Error::DivisionByZero);
        }
        let (j, rho) = self.implicit.as_ref().expect("φ-parts need an implicit symbol");
        if !b.mul(c).sub(&a.mul(d)).is_zero() {
            return Err(Error::MissingPullback {
                name: self.names()[*j].clone(),
            });
        }
        let n = a.mul(c).sub(&b.mul(d).mul(rho));
        let m = c.mul(c).sub(&d.mul(d).mul(rho));
        if m.is_zero() {
            // c + dφ has zero norm; fall back to a/c or b/d.
            return if !c.is_zero() {
                a.div(c).ok_or(Error::DivisionByZero)
            } else {
                b.div(d).ok_or(Error::DivisionByZero)
            };
        }
        n.div(&m).ok_or(Error::DivisionByZero)
    }
}

/// Value of `Φ_j²` forced by the syzygies when the pullback of generator `j`
/// is omitted, if some syzygy has the form `α Φ_j² + R` with `R` computable.
pub fn implied_square<K: Field>(
    basis: &InvariantBasis,
    pullbacks: &[Option<RamifiedFunction<K>>],
    j: usize,
) -> Option<RamifiedFunction<K>> {
    basis
        .syzygies()
        .iter()
        .find_map(|s| quadratic_value(s, j, pullbacks, basis))
}

/// `ρ` with `Φ_j² = ρ` from a syzygy `α Φ_j² + R`, when `R` can be evaluated.
fn quadratic_value<K: Field>(
    s: &GeneratorSymbolPoly<Rational>,
    j: usize,
    args: &[Option<RamifiedFunction<K>>],
    basis: &InvariantBasis,
) -> Option<RamifiedFunction<K>> {
    let mut alpha = None;
    let mut rest = Vec::new();
    for (m, c) in s.terms() {
        match m.exps()[j] {
            0 => rest.push((m.clone(), c.clone())),
            2 if m.exps().iter().enumerate().all(|(i, &e)| i == j || e == 0) => {
                alpha = Some(c.clone())
            }
            _ => return None,
        }
    }
    let alpha = alpha?;
    let r = GeneratorSymbolPoly::from_terms(s.nvars(), rest);
    let value = eval_symbols(&r, args, basis.names()).ok()?;
    Some(value.scale(&(-alpha.recip())))
}

/// Builds the order-`n` equation whose solutions `y` satisfy
/// `F_i(y) = f_i` for the primary generators.
///
/// `pullbacks[i]` is the pullback of generator `i`; non-primary entries may be
/// `None`. A precomputed [`Connection`] can be passed to reuse it across
/// runs with the same basis.
pub fn construct_ode<K: Field>(
    basis: &InvariantBasis,
    group: Option<&GroupSpec>,
    pullbacks: &[Option<RamifiedFunction<K>>],
    options: ConstructOptions,
    connection: Option<&Connection>,
) -> Result<OdeResult<K>> {
    if let Some(g) = group {
        g.require_unimodular()?;
    }
    if pullbacks.len() != basis.len() {
        return Err(Error::InvalidInput(format!(
            "expected {} pullbacks, got {}",
            basis.len(),
            pullbacks.len()
        )));
    }
    for &i in basis.primary() {
        if pullbacks[i].is_none() {
            return Err(Error::MissingPullback {
                name: basis.names()[i].clone(),
            });
        }
    }
    if options.validate {
        for check in validate_pullbacks(basis, pullbacks) {
            if check.holds == Some(false) {
                return Err(Error::InvalidInput(format!(
                    "the pullbacks violate syzygy {}",
                    check.index
                )));
            }
        }
    }
    let eval = SymbolEvaluator::new(basis, pullbacks);
    let minors = match options.strategy {
        Strategy::Frame => {
            let owned;
            let conn = match connection {
                Some(c) => c,
                None => {
                    owned = Connection::new(basis)?;
                    &owned
                }
            };
            frame_minors(basis, conn, &eval)?
        }
        Strategy::Literal => literal_minors(basis, &eval)?,
    };
    let n = basis.nvars();
    let lead = minors[n].clone();
    if lead.is_zero() {
        return Err(Error::DegenerateDependence {
            rows: n,
            cols: n + 1,
        });
    }
    let coeffs = minors[..n]
        .iter()
        .map(|c| c.div(&lead).ok_or(Error::DivisionByZero))
        .collect::<Result<Vec<_>>>()?;
    Ok(OdeResult {
        coeffs,
        provenance: Some(Provenance {
            names: basis.names().to_vec(),
            degrees: basis.degrees().to_vec(),
            primary: basis.primary().to_vec(),
            pullbacks: pullbacks.to_vec(),
            strategy: options.strategy,
        }),
    })
}

fn primary_pullbacks<K: Field>(basis: &InvariantBasis, eval: &SymbolEvaluator<'_, K>) -> Vec<RamifiedFunction<K>> {
    basis
        .primary()
        .iter()
        .map(|&i| eval.args[i].clone().unwrap_or_else(RamifiedFunction::zero))
        .collect()
}

fn frame_minors<K: Field>(
    basis: &InvariantBasis,
    conn: &Connection,
    eval: &SymbolEvaluator<'_, K>,
) -> Result<Vec<RamifiedFunction<K>>> {
    let n = conn.order();
    let f = primary_pullbacks(basis, eval);
    let df: Vec<RamifiedFunction<K>> = f.iter().map(RamifiedFunction::derivative).collect();
    let den = eval.eval_rational(conn.denominator())?;
    let mut gamma = alloc::vec![RamifiedFunction::zero(); n * n * n];
    for m in 0..n {
        for k in 0..n {
            for p in k..n {
                let num = conn.numerator(m, k, p);
                if num.is_zero() {
                    continue;
                }
                let g = eval.ratio(&eval.eval_rational(num)?, &den)?;
                gamma[(m * n + k) * n + p] = g.clone();
                gamma[(m * n + p) * n + k] = g;
            }
        }
    }
    let mut columns: Vec<Vec<RamifiedFunction<K>>> = Vec::with_capacity(n + 1);
    columns.push(
        (0..n)
            .map(|m| f[m].mul(&RamifiedFunction::from_i64(conn.degrees()[m] as i64)))
            .collect(),
    );
    for _ in 0..n {
        let a = columns.last().unwrap();
        let next = (0..n)
            .map(|m| {
                let mut acc = a[m].derivative();
                for k in 0..n {
                    if a[k].is_zero() {
                        continue;
                    }
                    for p in 0..n {
                        let g = &gamma[(m * n + k) * n + p];
                        if g.is_zero() || df[p].is_zero() {
                            continue;
                        }
                        acc = acc.add(&g.mul(&a[k]).mul(&df[p]));
                    }
                }
                acc
            })
            .collect();
        columns.push(next);
    }
    let matrix = Matrix::from_fn(n, n + 1, |i, j| columns[j][i].clone());
    nullspace_cofactor(&matrix)
}

fn literal_minors<K: Field>(
    basis: &InvariantBasis,
    eval: &SymbolEvaluator<'_, K>,
) -> Result<Vec<RamifiedFunction<K>>> {
    let ctx = setup_derivation(&eval.args);
    let f = primary_pullbacks(basis, eval);
    let table = build_xij(&ctx, &basis.primary_generators(), &f)?;
    let minors = solve_dependence(&table)?;
    let mut rw = Rewriter::new(basis);
    minors
        .iter()
        .map(|c| eval.eval_general(&rw.rewrite(c)?))
        .collect::<Result<Vec<Pair<K>>>>()
        .and_then(|pairs| {
            let n = pairs.len() - 1;
            let mut out = Vec::with_capacity(n + 1);
            for p in &pairs[..n] {
                out.push(eval.ratio(p, &pairs[n])?);
            }
            out.push(RamifiedFunction::one());
            Ok(out)
        })
}

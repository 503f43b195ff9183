use alloc::vec::Vec;

use num_integer::Integer;

use crate::algebra::{Field, MPoly, RamifiedFunction, Ring};

/// The derivation `δ = d/dz` on functions written in `w` with `z = w^r`,
/// extended to polynomials in `X_1, ..., X_n` by `δ X_i = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationContext<K> {
    r: u32,
    pullbacks: Vec<Option<RamifiedFunction<K>>>,
}

/// Collects the pullbacks and their common ramification index.
pub fn setup_derivation<K: Field>(pullbacks: &[Option<RamifiedFunction<K>>]) -> DerivationContext<K> {
    let r = pullbacks
        .iter()
        .flatten()
        .fold(1u32, |acc, f| acc.lcm(&f.ramification()));
    DerivationContext {
        r,
        pullbacks: pullbacks.to_vec(),
    }
}

impl<K: Field> DerivationContext<K> {
    /// Common ramification index of all pullbacks.
    pub fn ramification(&self) -> u32 {
        self.r
    }

    pub fn pullbacks(&self) -> &[Option<RamifiedFunction<K>>] {
        &self.pullbacks
    }

    pub fn delta(&self, f: &RamifiedFunction<K>) -> RamifiedFunction<K> {
        f.derivative()
    }

    /// Coefficientwise derivative; the variables are constants.
    pub fn delta_poly(&self, p: &MPoly<RamifiedFunction<K>>) -> MPoly<RamifiedFunction<K>> {
        MPoly::from_terms(
            p.nvars(),
            p.terms().map(|(m, c)| (m.clone(), c.derivative())),
        )
    }

    /// Pullback `i`, or zero when it was not supplied.
    pub fn pullback(&self, i: usize) -> RamifiedFunction<K> {
        self.pullbacks
            .get(i)
            .cloned()
            .flatten()
            .unwrap_or_else(RamifiedFunction::zero)
    }
}

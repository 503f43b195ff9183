//! Finite linear groups, invariant-ring bases and rewriting of invariants in
//! terms of generators.

mod basis;
mod group;
mod klein;
mod rewrite;

pub use basis::{hessian, jacobian, GeneratorSymbolPoly, InvariantBasis};
pub use group::{check_invariance, GroupSpec};
pub use klein::{
    bordered_hessian_determinant, hessian_determinant, klein_f4, klein_generator_matrices,
    klein_invariants, klein_preset, klein_syzygy, printed_syzygy, reverse_coordinates, KLEIN_ORDER,
};
pub use rewrite::{eval_symbols, validate_pullbacks, Rewriter, SyzygyCheck};

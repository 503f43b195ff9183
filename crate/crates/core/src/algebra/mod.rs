//! Exact arithmetic substrate.
//!
//! Coefficient rings are layered: [`Rational`] sits inside [`CycNum`] and
//! inside the rational function fields [`RatFunc`] / [`RamifiedFunction`].
//! [`MPoly`] and [`Matrix`] are generic over any [`Ring`], so the same
//! determinant code serves cyclotomic invariance checks and function-field
//! dependence solving.

mod cyclotomic;
mod matrix;
mod modp;
mod mpoly;
mod ratfun;
mod rational;
mod ring;
mod roots;
mod upoly;

pub use cyclotomic::{cyclotomic_polynomial, euler_totient, CycNum};
pub use matrix::{nullspace_cofactor, Matrix};
pub use modp::{rank_profile, PRIMES};
pub use mpoly::{Monomial, MPoly};
pub use ratfun::{RamifiedFunction, RatFunc};
pub use rational::{rat, rational_from_bigint, Rational};
pub use ring::{Field, Ring};
pub use roots::{complex_roots, integer_coeffs, rational_roots};
pub use upoly::UPoly;

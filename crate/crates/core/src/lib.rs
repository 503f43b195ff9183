//! Exact construction of linear ordinary differential equations whose Schwarz
//! maps parametrize curves invariant under a finite linear group.
//!
//! The crate is `no_std` (it needs `alloc`). It is organized bottom-up:
//!
//! * [`algebra`]: rationals, cyclotomic numbers, sparse multivariate
//!   polynomials, univariate rational functions with ramification, and exact
//!   linear algebra.
//! * [`invariant`]: finite groups given by generator matrices, invariant-ring
//!   bases, invariance checks, and rewriting of invariants in terms of the
//!   generators. Ships the `klein168` preset.
//! * [`builder`]: the construction of the differential equation from
//!   pullback functions.
//! * [`singular`]: singular points, characteristic exponents and the curve
//!   data derived from them.
//! * [`numeric`]: floating-point continuation of a fundamental system along a
//!   path, used to verify a construction end to end.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod builder;
pub mod error;
pub mod invariant;
pub mod numeric;
pub mod singular;

pub use error::{Error, ErrorClass, Result};

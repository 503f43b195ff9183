//! Construction of the differential equation from pullbacks of invariant
//! generators.

mod construct;
mod context;
mod frame;
mod literal;

pub use construct::{construct_ode, implied_square, ConstructOptions, OdeResult, Provenance, Strategy};
pub use context::{setup_derivation, DerivationContext};
pub use frame::Connection;
pub use literal::{build_xij, solve_dependence, XijTable};

//! Floating-point check of a constructed equation: integrate it from
//! consistent initial data and compare the invariants of the solution
//! vector with the pullbacks.

mod eval;
mod integrate;
mod newton;
mod verify;

pub use eval::{Branch, NumFunc, NumPoly};
pub use integrate::{integrate, integrate_segment, Companion, PathSystem, Sample, Trajectory};
pub use newton::{initial_point, taylor_solution, InitialPoint, NumSystem, MAX_CONDITION};
pub use verify::{default_path, residual, verify, NumericConfig, VerifyReport};

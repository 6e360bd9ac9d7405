//! Differential operators with constant or polynomial coefficients, the
//! `Delta_A` family and its bilinear context.

mod context;
mod op;

pub use context::{constant_matrix, gradient, hessian, SymBilinearContext};
pub use op::{DiffOp, DiffOpJson, DiffOpTermJson};

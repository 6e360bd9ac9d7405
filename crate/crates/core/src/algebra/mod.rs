//! Exact scalar fields and dense linear algebra over them.

mod field;
mod matrix;
mod scalar;

pub use field::Field;
pub use matrix::{Congruence, Matrix, MatrixJson, RingElem};
pub(crate) use scalar::fmt_rational;
pub use scalar::Scalar;

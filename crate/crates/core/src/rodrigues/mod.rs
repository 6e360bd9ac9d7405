//! Classical orthogonal polynomials as `c_m Lambda^m P^m` for
//! `Lambda = w^{-1} (d/dx) w`, in one variable and through the formal
//! `Lambda_s = W^{-1} (sum s_i d_i) W` in several, with exact orthogonality
//! checks against closed-form moments.

mod family;
mod generate;
pub mod oracle;

pub use family::{pochhammer, FamilyKind, WeightFamily};
pub use generate::{
    generate, generate_1d, generate_multi, generate_table, indices, orthogonality_check, orthogonality_table,
    s_coefficient, MultiSeed, Multiplier, RodriguesRow,
};

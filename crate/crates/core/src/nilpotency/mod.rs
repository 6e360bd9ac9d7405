//! Criteria for `Lambda`-nilpotency and their cross-checks.

mod criteria;
mod frame;

pub use criteria::{
    as_laplace_matrix, check_direct, check_direct_ctx, check_directional, check_hessian_fullrank,
    check_omega, check_quadratic, quadratic_form, quadratic_matrix, DirectionalReport, DirectionalSample,
    Method, NilpotencyVerdict, Witness,
};
pub use frame::IsotropicFrame;

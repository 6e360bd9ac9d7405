//! Sparse multivariate polynomials, Laurent polynomials, rational functions
//! with designated denominators, and truncated series in `t`.

mod format;
pub(crate) mod kernel;
mod monomial;
mod parse;
#[allow(clippy::module_inception)]
mod poly;
mod rational_fn;
mod subst;
mod tseries;

pub use format::{format_poly, format_poly_with};
pub use monomial::{monomials_of_degree, Monomial};
pub use parse::{parse_poly, parse_scalar};
pub use poly::{LaurentPoly, Poly};
pub use rational_fn::RationalFn;
pub use subst::{
    constant_term, dehomogenize, holomorphic_part, homogenize, inverse_monomial, phi, substitute_linear,
    LinearMode,
};
pub use tseries::TSeries;

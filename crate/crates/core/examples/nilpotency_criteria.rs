//! Compares the nilpotency criteria on a few quartics in three variables.
//!
//! ```sh
//! cargo run --example nilpotency_criteria
//! ```
use nilvc::algebra::Field;
use nilvc::diffops::SymBilinearContext;
use nilvc::nilpotency::{check_direct_ctx, check_directional, check_hessian_fullrank};
use nilvc::poly::parse_poly;

fn main() -> nilvc::Result<()> {
    let qi = Field::GaussianRationals;
    let ctx = SymBilinearContext::laplace(qi, 3)?;
    for text in [
        "(z1 + i*z2)^4",
        "(z1 + i*z2)^3*z3",
        "z1^4 + z2^4 + z3^4",
        "(z1 + i*z2)^2*(z1 - i*z2)^2",
    ] {
        let p = parse_poly(text, 3, qi, false)?;
        let direct = check_direct_ctx(&ctx, &p)?;
        let hessian = check_hessian_fullrank(&ctx, &p)?;
        let directional = check_directional(&ctx, &p, 8, 1)?;
        println!(
            "{text:<32} direct={:<5} hessian={:<5} directional={:<5} witness={:?}",
            direct.is_nilpotent,
            hessian.is_nilpotent,
            directional.verdict.is_nilpotent,
            direct.witness.map(|w| w.m),
        );
    }
    Ok(())
}

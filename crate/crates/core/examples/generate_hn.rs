//! Builds Hessian nilpotent quartics from isotropic frames, one per shape,
//! and checks each against the frame criterion.
use nilvc::algebra::Field;
use nilvc::diffops::SymBilinearContext;
use nilvc::nilpotency::check_omega;
use nilvc::poly::format_poly;
use nilvc::vc::{generate_hn, FrameShape};

fn main() -> nilvc::Result<()> {
    let ctx = SymBilinearContext::laplace(Field::GaussianRationals, 3)?;
    for shape in [
        FrameShape::Orthogonal,
        FrameShape::Tangent,
        FrameShape::RandomRetry,
    ] {
        let ex = generate_hn(&ctx, 4, 2, shape, 7)?;
        let omega = check_omega(&ex.frame, None)?;
        println!(
            "{shape:?}: {} frame vectors, omega nilpotent={}",
            ex.frame.len(),
            omega.is_nilpotent
        );
        println!("  P = {}", format_poly(&ex.p));
    }
    Ok(())
}

//! Isotropy of the vanishing sequence under the bilinear form f(AD)g.
use nilvc::algebra::Field;
use nilvc::diffops::SymBilinearContext;
use nilvc::isotropy::{isotropy_suite, quadratic_isotropy, BilinearFormContext};
use nilvc::poly::parse_poly;

fn main() -> nilvc::Result<()> {
    let qi = Field::GaussianRationals;
    let fc = BilinearFormContext::new(SymBilinearContext::laplace(qi, 3)?)?;

    let p = parse_poly("(z1 + i*z2)^3 + z3*(z1 + i*z2)^2", 3, qi, false)?;
    let r = isotropy_suite(&fc, &p, 3, 1)?;
    println!("cubic: {} rows, all vanished={}", r.rows.len(), r.all_vanished());

    let q = parse_poly("(z1 + i*z2)^2 + (z1 + i*z2)*z3", 3, qi, false)?;
    let r = quadratic_isotropy(&fc, &q, 3, 1)?;
    println!(
        "quadratic: {} rows, all vanished={}",
        r.rows.len(),
        r.all_vanished()
    );
    Ok(())
}

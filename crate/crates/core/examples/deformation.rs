//! Deforms a nilpotent cubic: inverse map, gradient form, heat identity and
//! the closed-formula fit.
use nilvc::algebra::Field;
use nilvc::deformation::{run_deformation, DeformationOptions};
use nilvc::diffops::SymBilinearContext;
use nilvc::poly::parse_poly;

fn main() -> nilvc::Result<()> {
    let qi = Field::GaussianRationals;
    let ctx = SymBilinearContext::laplace(qi, 2)?;
    let p = parse_poly("(z1 + i*z2)^3", 2, qi, false)?;
    let opts = DeformationOptions {
        emit_polys: true,
        ..Default::default()
    };
    let r = run_deformation(&ctx, &p, &opts)?;
    println!("F.G = id: {}  G.F = id: {}", r.f_after_g_is_id, r.g_after_f_is_id);
    println!("gradient form: {}  curl free: {}", r.gradient_form, r.curl_free);
    println!(
        "solvers agree: {:?}  heat: {:?}",
        r.solvers_agree,
        r.heat.as_ref().map(|h| h.residual_zero)
    );
    for (m, q) in r.q.iter().flatten().enumerate() {
        println!("  [t^{m}] Q = {q}");
    }
    for row in &r.closed_formula {
        println!(
            "  k={} m={} fitted={:?} printed={}",
            row.k, row.m, row.fitted, row.printed
        );
    }
    Ok(())
}

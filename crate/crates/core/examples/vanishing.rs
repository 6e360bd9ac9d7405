//! Vanishing sequences: an isotropic power, the z1*D1^2 counterexample and
//! a pure derivative with its predicted first vanishing index.
use nilvc::algebra::{Field, Scalar};
use nilvc::diffops::{DiffOp, SymBilinearContext};
use nilvc::poly::{parse_poly, Monomial};
use nilvc::vc::{predict_delta_power, run_vc, VcExperiment};

fn main() -> nilvc::Result<()> {
    let (q, qi) = (Field::Rationals, Field::GaussianRationals);

    let lap = SymBilinearContext::laplace(qi, 2)?;
    let p = parse_poly("(z1 + i*z2)^4", 2, qi, false)?;
    let r = run_vc(&VcExperiment::new(lap.delta().clone(), p, 6))?;
    println!(
        "isotropic quartic: first_vanish={:?} stable={}",
        r.first_vanish, r.stable_zero
    );

    let z = parse_poly("z1", 1, q, false)?;
    let bondt = DiffOp::from_terms(q, 1, vec![(Monomial::new(&[2]), z.clone())])?;
    let r = run_vc(&VcExperiment::new(bondt, z, 8).with_emit_polys(true))?;
    for e in &r.entries {
        println!("  m={:<2} {}", e.m, e.poly.as_deref().unwrap_or("-"));
    }

    let d3 = DiffOp::derivative(q, Monomial::new(&[3, 0]), Scalar::one(q));
    let p = parse_poly("z1^2*z2 + z1*z2^3 + 5", 2, q, false)?;
    let r = run_vc(&VcExperiment::new(d3, p, 10))?;
    println!(
        "D1^3 on z1-degree 2: first_vanish={:?} predicted={}",
        r.first_vanish,
        predict_delta_power(3, 2)?
    );
    Ok(())
}

//! Vanishing over prime fields for degree-decreasing operators.
use nilvc::algebra::{Field, Scalar};
use nilvc::diffops::DiffOp;
use nilvc::poly::{parse_poly, Monomial};
use nilvc::vc::{run_charp, VcExperiment};

fn main() -> nilvc::Result<()> {
    for p in [2, 3, 5] {
        let f = Field::prime(p)?;
        let op = DiffOp::derivative(f, Monomial::new(&[1]), Scalar::one(f));
        let poly = parse_poly("z1^3 + 2*z1 + 1", 1, f, false)?;
        let r = run_charp(&VcExperiment::new(op, poly, 12), true)?;
        println!(
            "F_{p}: first_vanish={:?} stable={}",
            r.first_vanish, r.stable_zero
        );
    }
    Ok(())
}

use nilvc::algebra::{Field, Matrix};
use nilvc::deformation::*;
use nilvc::diffops::SymBilinearContext;
use nilvc::poly::{parse_poly, Poly};
use nilvc::vc::{generate_hn, FrameShape};
use proptest::prelude::*;

const Q: Field = Field::Rationals;
const QI: Field = Field::GaussianRationals;

fn poly(s: &str, n: usize, f: Field) -> Poly {
    parse_poly(s, n, f, false).unwrap()
}

#[test]
fn cubic_in_one_variable() {
    let ctx = SymBilinearContext::laplace(Q, 1).unwrap();
    let p = poly("z1^3", 1, Q);
    let g = invert_map(&ctx, &p, 3).unwrap();
    assert_eq!(g[0].coeff(0), poly("z1", 1, Q));
    assert_eq!(g[0].coeff(1), poly("3*z1^2", 1, Q));
    assert_eq!(g[0].coeff(2), poly("18*z1^3", 1, Q));
    let q = solve_cauchy_gradient(&ctx, &p, 2).unwrap();
    assert_eq!(q.coeff(1), poly("9/2*z1^4", 1, Q));
    assert!(solve_cauchy_laplace(&ctx, &p, 2).is_err());
    assert_eq!(solver_disagreement(&ctx, &p, 4).unwrap(), Some(1));
}

#[test]
fn inverse_and_gradient_identities() {
    let ctx = SymBilinearContext::new(Matrix::from_i64(Q, &[&[2, 1], &[1, 3]]).unwrap()).unwrap();
    let p = poly("z1^3 - z1*z2^2 + z2^4", 2, Q);
    let r = run_deformation(
        &ctx,
        &p,
        &DeformationOptions {
            n_t: 5,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(r.f_after_g_is_id && r.g_after_f_is_id);
    assert!(r.gradient_form && r.curl_free);
    assert!(!r.nilpotent);
    assert!(r.solvers_agree.is_none());
    assert!(r.first_disagreement.is_some());
    assert!(r.all_ok());
}

#[test]
fn preconditions() {
    let ctx = SymBilinearContext::laplace(Q, 2).unwrap();
    assert!(invert_map(&ctx, &poly("z1 + z2^2", 2, Q), 3).is_err());
    let singular = SymBilinearContext::new(Matrix::from_i64(Q, &[&[1, 0], &[0, 0]]).unwrap()).unwrap();
    assert!(forward_map(&singular, &poly("z1^3", 2, Q), 3).is_err());
    let q = solve_cauchy_gradient(&ctx, &poly("z1^3", 2, Q), 3).unwrap();
    assert!(probe_closed_formula(&ctx, &poly("z1^3 + z2^2", 2, Q), &q, 1).is_err());
}

#[test]
fn nilpotent_quartic_full_report() {
    let ctx = SymBilinearContext::laplace(QI, 3).unwrap();
    let ex = generate_hn(&ctx, 4, 1, FrameShape::Tangent, 3).unwrap();
    let opts = DeformationOptions {
        n_t: 4,
        n_z: 12,
        n_s: 2,
        k_max: 2,
        emit_polys: true,
    };
    let r = run_deformation(&ctx, &ex.p, &opts).unwrap();
    assert!(r.nilpotent);
    assert_eq!(r.solvers_agree, Some(true));
    assert_eq!(r.grading_ok, Some(true));
    let heat = r.heat.as_ref().unwrap();
    assert!(heat.residual_zero && heat.initial_ok);
    assert!(r.all_ok());
    assert_eq!(r.q.as_ref().unwrap().len(), 4);
    let row = r.closed_formula.iter().find(|c| c.k == 1 && c.m == 1).unwrap();
    assert_eq!(row.status, FitStatus::Fitted);
    assert_eq!(row.fitted.as_deref(), Some("1/4"));
    assert!(row.matches_printed);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn generated_cubics_deform_consistently(seed in 0u64..500) {
        let ctx = SymBilinearContext::laplace(QI, 3).unwrap();
        let ex = generate_hn(&ctx, 3, 2, FrameShape::Orthogonal, seed).unwrap();
        let opts = DeformationOptions { n_t: 4, n_z: 10, n_s: 2, ..Default::default() };
        let r = run_deformation(&ctx, &ex.p, &opts).unwrap();
        prop_assert!(r.all_ok());
    }
}

use nilvc::algebra::{Field, Matrix, Scalar};
use nilvc::diffops::{DiffOp, SymBilinearContext};
use nilvc::nilpotency::*;
use nilvc::poly::{parse_poly, phi, Monomial, Poly};
use nilvc::sample;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rationals;
const QI: Field = Field::GaussianRationals;

fn qi(s: &str, n: usize) -> Poly {
    parse_poly(s, n, QI, false).unwrap()
}

#[test]
fn direct_examples() {
    let lap = SymBilinearContext::laplace(QI, 2).unwrap();
    let v = check_direct_ctx(&lap, &qi("z1^2 + z2^2", 2)).unwrap();
    assert!(!v.is_nilpotent);
    assert_eq!(v.witness.as_ref().unwrap().m, 1);
    assert_eq!(v.witness.unwrap().value, "4");

    let v = check_direct(lap.delta(), &qi("(z1 + i*z2)^2", 2), 2).unwrap();
    assert!(v.is_nilpotent && v.conclusive);
    assert!(v.witness.is_none());

    let bondt = DiffOp::from_terms(
        Q,
        1,
        vec![(Monomial::new(&[2]), parse_poly("z1", 1, Q, false).unwrap())],
    )
    .unwrap();
    let x = parse_poly("z1", 1, Q, false).unwrap();
    let v = check_direct(&bondt, &x, 25).unwrap();
    assert!(v.is_nilpotent);
    assert!(!v.conclusive);
    assert_eq!(v.method, Method::Direct);
    let lin = check_direct(lap.delta(), &qi("z1 + 3", 2), 2).unwrap();
    assert_eq!(lin.method, Method::Degenerate);
}

#[test]
fn bondt_direct_sequence_vanishes() {
    let bondt = DiffOp::from_terms(
        Q,
        1,
        vec![(Monomial::new(&[2]), parse_poly("z1", 1, Q, false).unwrap())],
    )
    .unwrap();
    let x = parse_poly("z1", 1, Q, false).unwrap();
    for m in 1..=10u32 {
        assert!(bondt.apply_pow(&x.pow(m), m).unwrap().is_zero());
    }
}

#[test]
fn hessian_examples() {
    let lap = SymBilinearContext::laplace(QI, 2).unwrap();
    assert!(
        check_hessian_fullrank(&lap, &qi("(z1 + i*z2)^3", 2))
            .unwrap()
            .is_nilpotent
    );
    let swap = SymBilinearContext::new(Matrix::from_i64(QI, &[&[0, 1], &[1, 0]]).unwrap()).unwrap();
    let p = qi("z1*z2", 2);
    assert_eq!(
        check_hessian_fullrank(&swap, &p).unwrap().is_nilpotent,
        check_direct_ctx(&swap, &p).unwrap().is_nilpotent
    );
    let singular = SymBilinearContext::new(Matrix::from_i64(QI, &[&[1, 0], &[0, 0]]).unwrap()).unwrap();
    assert!(check_hessian_fullrank(&singular, &p).is_err());
    assert!(check_hessian_fullrank(&lap, &qi("z1^3 + z1", 2)).is_err());
}

#[test]
fn quadratic_examples() {
    let lap = SymBilinearContext::laplace(QI, 2).unwrap();
    let i = Scalar::imag_unit();
    let one = Scalar::one(QI);
    let b = Matrix::from_rows(QI, vec![vec![one.clone(), i.clone()], vec![i.clone(), -&one]]).unwrap();
    assert!(check_quadratic(&lap, &b).unwrap().is_nilpotent);
    assert!(
        !check_quadratic(&lap, &Matrix::identity(QI, 2))
            .unwrap()
            .is_nilpotent
    );
    assert_eq!(quadratic_matrix(&quadratic_form(&b)).unwrap(), b);
}

#[test]
fn quadratic_rank_deficient_uses_submatrix() {
    // A = diag(1, 1, 0): z3 is invisible to Delta_A
    let a = Matrix::from_i64(QI, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]).unwrap();
    let ctx = SymBilinearContext::new(a).unwrap();
    for (text, expect) in [("(z1 + i*z2)^2 + z3^2", true), ("z1^2 + z3^2", false)] {
        let p = qi(text, 3);
        let v = check_quadratic(&ctx, &quadratic_matrix(&p).unwrap()).unwrap();
        assert_eq!(v.method, Method::QuadraticSubmatrix);
        assert_eq!(v.is_nilpotent, expect);
        assert_eq!(check_direct_ctx(&ctx, &p).unwrap().is_nilpotent, expect);
    }
}

fn isotropic(a: i64, b: i64) -> Vec<Scalar> {
    vec![Scalar::gaussian_int(a, 0), Scalar::gaussian_int(0, b)]
}

#[test]
fn omega_examples() {
    let lap = SymBilinearContext::laplace(QI, 2).unwrap();
    let one = Scalar::one(QI);
    let f = IsotropicFrame::new(lap.clone(), 4, vec![isotropic(1, 1)], vec![one.clone()]).unwrap();
    assert_eq!(f.assemble(), qi("(z1 + i*z2)^4", 2));
    assert!(check_omega(&f, None).unwrap().is_nilpotent);

    let f = IsotropicFrame::new(
        lap.clone(),
        3,
        vec![isotropic(1, 1), isotropic(2, 2)],
        vec![one.clone(), Scalar::gaussian_int(0, 3)],
    )
    .unwrap();
    assert!(f.gram().is_zero());
    assert!(check_omega(&f, None).unwrap().is_nilpotent);

    // <(1,i),(1,-i)> = 2: Omega is not nilpotent and neither is P
    let f = IsotropicFrame::new(
        lap.clone(),
        3,
        vec![isotropic(1, 1), isotropic(1, -1)],
        vec![one.clone(), one.clone()],
    )
    .unwrap();
    let p = f.assemble();
    for j in 0..=1 {
        assert!(!check_omega(&f, Some(j)).unwrap().is_nilpotent);
    }
    assert!(!check_direct_ctx(&lap, &p).unwrap().is_nilpotent);
    assert!(check_omega(&f, Some(2)).is_err());

    assert!(IsotropicFrame::new(lap, 3, vec![vec![one.clone(), one.clone()]], vec![one]).is_err());
}

#[test]
fn directional_examples() {
    let lap = SymBilinearContext::laplace(QI, 2).unwrap();
    let r = check_directional(&lap, &qi("(z1 + i*z2)^4", 2), 5, 1).unwrap();
    assert!(r.verdict.is_nilpotent);
    assert_eq!(r.samples[0].reduced, qi("12*(z1 + i*z2)^2", 2).to_string());
    let r = check_directional(&lap, &qi("z1^4 + z2^4", 2), 5, 1).unwrap();
    assert_eq!(r.violation, Some(0));
    let r = check_directional(&lap, &qi("(z1 + i*z2)^2", 2), 0, 1).unwrap();
    assert!(r.verdict.is_nilpotent);
    assert!(check_directional(&lap, &qi("z1^3 + z2", 2), 1, 1).is_err());
}

#[test]
fn verdict_json_shape() {
    let lap = SymBilinearContext::laplace(QI, 2).unwrap();
    let v = check_direct_ctx(&lap, &qi("z1^2", 2)).unwrap();
    let j = serde_json::to_value(&v).unwrap();
    assert_eq!(j["method"]["kind"], "direct");
    assert_eq!(j["witness"]["m"], 1);
}

fn random_case(seed: u64) -> (SymBilinearContext, Poly) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 + (seed % 2) as usize;
    let d = 2 + (seed / 2 % 3) as u32;
    let a = sample::symmetric_invertible(&mut rng, QI, n, 2);
    let p = sample::homogeneous(&mut rng, QI, n, d, 0.5, 2);
    (SymBilinearContext::new(a).unwrap(), p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hessian_agrees_with_direct(seed in any::<u64>()) {
        let (ctx, p) = random_case(seed);
        let d = check_direct_ctx(&ctx, &p).unwrap();
        let h = check_hessian_fullrank(&ctx, &p).unwrap();
        prop_assert_eq!(d.is_nilpotent, h.is_nilpotent);
    }

    #[test]
    fn conjugation_preserves_verdict(seed in any::<u64>()) {
        let (ctx, p) = random_case(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let u = sample::invertible(&mut rng, QI, ctx.nvars(), 2);
        let conj = ctx.conjugate(&u).unwrap();
        let q = phi(&p, &u).unwrap();
        prop_assert_eq!(
            check_direct_ctx(&ctx, &p).unwrap().is_nilpotent,
            check_direct_ctx(&conj, &q).unwrap().is_nilpotent
        );
    }
}

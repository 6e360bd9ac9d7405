use nilvc::algebra::{Field, Matrix, Scalar};
use nilvc::diffops::{DiffOp, SymBilinearContext};
use nilvc::nilpotency::{check_direct_ctx, check_omega};
use nilvc::poly::{parse_poly, phi, Monomial, Poly};
use nilvc::sample;
use nilvc::vc::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rationals;
const QI: Field = Field::GaussianRationals;

fn poly(s: &str, n: usize, f: Field) -> Poly {
    parse_poly(s, n, f, false).unwrap()
}

fn bondt() -> DiffOp {
    DiffOp::from_terms(Q, 1, vec![(Monomial::new(&[2]), poly("z1", 1, Q))]).unwrap()
}

#[test]
fn isotropic_power_vanishes_at_once() {
    let lap = SymBilinearContext::laplace(QI, 2).unwrap();
    let e = VcExperiment::new(lap.delta().clone(), poly("(z1 + i*z2)^4", 2, QI), 6);
    let r = run_vc(&e).unwrap();
    assert_eq!(r.first_vanish, Some(1));
    assert!(r.stable_zero);
    assert_eq!(r.reduced_vars, Some(1));
}

#[test]
fn bondt_never_vanishes() {
    let e = VcExperiment::new(bondt(), poly("z1", 1, Q), 25).with_emit_polys(true);
    let r = run_vc(&e).unwrap();
    assert_eq!(r.first_vanish, None);
    assert!(!r.stable_zero);
    assert_eq!(r.degree_check, Some(true));
    for entry in &r.entries {
        assert_eq!(entry.degree, Some(1));
        assert_eq!(entry.terms, 1);
    }
    // (x D^2)^m x^{m+1} = (m+1)! m! x
    assert_eq!(r.entries[2].poly.as_deref(), Some("144*z1"));
}

#[test]
fn first_order_operator_has_no_vanishing() {
    let d1 = DiffOp::derivative(Q, Monomial::new(&[1]), Scalar::one(Q));
    let r = run_vc(&VcExperiment::new(d1, poly("z1^2", 1, Q), 10)).unwrap();
    assert_eq!(r.first_vanish, None);
    let degs: Vec<_> = r.entries.iter().map(|e| e.degree.unwrap()).collect();
    assert_eq!(degs, (1..=10).map(|m| m + 2).collect::<Vec<_>>());
}

#[test]
fn ggvc_and_shift_modes() {
    let lap = SymBilinearContext::laplace(QI, 2).unwrap();
    let p = poly("(z1 + i*z2)^3", 2, QI);
    let e = VcExperiment::new(lap.delta().clone(), p.clone(), 5).with_g(poly("z1^2 + z2", 2, QI));
    let r = run_vc(&e).unwrap();
    assert_eq!(r.mode, VcMode::Ggvc);
    assert!(r.stable_zero);
    let r = run_vc(&VcExperiment::new(lap.delta().clone(), p, 5).with_k_shift(3)).unwrap();
    assert_eq!(r.k_shift, 3);
    assert_eq!(r.first_vanish, Some(1));
}

#[test]
fn reduction_matches_direct_computation() {
    let ctx = SymBilinearContext::laplace(QI, 3).unwrap();
    for seed in 0..6 {
        let ex = generate_hn(&ctx, 4, 2, FrameShape::Tangent, seed).unwrap();
        let base = VcExperiment::new(ctx.delta().clone(), ex.p.clone(), 4).with_emit_polys(true);
        let a = run_vc(&base).unwrap();
        let b = run_vc(&base.clone().with_reduction(false)).unwrap();
        assert!(a.reduced_vars.is_some());
        assert_eq!(a.first_vanish, b.first_vanish);
        for (x, y) in a.entries.iter().zip(&b.entries) {
            assert_eq!(x.degree, y.degree);
            assert_eq!(x.poly, y.poly);
        }
    }
}

#[test]
fn delta_power_prediction() {
    assert_eq!(predict_delta_power(1, 0).unwrap(), 1);
    assert_eq!(predict_delta_power(2, 1).unwrap(), 2);
    assert_eq!(predict_delta_power(3, 2).unwrap(), 3);
    assert!(predict_delta_power(2, 2).is_err());
    for k in 2..=5u32 {
        for d in 0..k {
            let delta = DiffOp::derivative(Q, Monomial::new(&[k as i32, 0]), Scalar::one(Q));
            let p = poly(
                &format!("z1^{d}*z2 + 3*z1^{}*z2^2 + z2", d.saturating_sub(1)),
                2,
                Q,
            );
            let r = run_vc(&VcExperiment::new(delta, p, 12)).unwrap();
            assert_eq!(
                r.first_vanish,
                Some(predict_delta_power(k, d).unwrap()),
                "k={k} d={d}"
            );
            assert!(r.stable_zero);
        }
    }
}

#[test]
fn charp_examples() {
    let f3 = Field::prime(3).unwrap();
    let d = DiffOp::derivative(f3, Monomial::new(&[1]), Scalar::one(f3));
    let r = run_charp(&VcExperiment::new(d.clone(), poly("z1^2", 1, f3), 8), true).unwrap();
    // D^m z^{2m+2} carries the falling factorial (2m+2)...(m+3)
    for e in &r.entries {
        let m = e.m as u64;
        let ff: u64 = (m + 3..=2 * m + 2).product::<u64>() % 3;
        assert_eq!(e.degree.is_none(), ff == 0, "m = {m}");
    }
    let c = run_charp(&VcExperiment::new(d, poly("2", 1, f3), 3), true).unwrap();
    assert_eq!(c.first_vanish, Some(1));

    let f2 = Field::prime(2).unwrap();
    let lap = SymBilinearContext::new(Matrix::identity(f2, 2)).unwrap();
    let r = run_charp(
        &VcExperiment::new(lap.delta().clone(), poly("z1^3 + z1*z2^2 + z2", 2, f2), 12),
        true,
    )
    .unwrap();
    assert!(r.stable_zero);
    assert!(r.first_vanish.unwrap() <= 2);

    let id = DiffOp::identity(f3, 1);
    let e = VcExperiment::new(id, poly("z1", 1, f3), 3);
    assert!(run_charp(&e, true).is_err());
    let q = VcExperiment::new(bondt(), poly("z1", 1, Q), 3);
    assert!(run_charp(&q, false).is_err());
}

#[test]
fn degree_decreasing_detection() {
    let f5 = Field::prime(5).unwrap();
    let ok = DiffOp::from_terms(f5, 1, vec![(Monomial::new(&[2]), poly("z1", 1, f5))]).unwrap();
    assert!(is_degree_decreasing(&ok, 10).unwrap());
    // z1^5 D1^5 kills everything in characteristic 5
    let p5 = DiffOp::from_terms(f5, 1, vec![(Monomial::new(&[5]), poly("z1^5", 1, f5))]).unwrap();
    assert!(is_degree_decreasing(&p5, 12).unwrap());
    let bad = DiffOp::from_terms(f5, 1, vec![(Monomial::new(&[1]), poly("z1", 1, f5))]).unwrap();
    assert!(!is_degree_decreasing(&bad, 3).unwrap());
}

#[test]
fn generator_shapes() {
    let ctx = SymBilinearContext::laplace(QI, 4).unwrap();
    for shape in [
        FrameShape::Orthogonal,
        FrameShape::Tangent,
        FrameShape::RandomRetry,
    ] {
        let ex = generate_hn(&ctx, 4, 2, shape, 7).unwrap();
        assert!(ex.verdict.is_nilpotent);
        assert!(ex.p.is_homogeneous());
        assert_eq!(ex.p.degree(), Some(4));
        if shape == FrameShape::Orthogonal {
            assert!(ex.frame.gram().is_zero());
        }
        let again = generate_hn(&ctx, 4, 2, shape, 7).unwrap();
        assert_eq!(again.p, ex.p);
    }
    let one = generate_hn(&ctx, 4, 1, FrameShape::Orthogonal, 1).unwrap();
    assert_eq!(one.frame.len(), 1);
    let small = SymBilinearContext::laplace(QI, 2).unwrap();
    assert!(generate_hn(&small, 4, 1, FrameShape::Tangent, 1).is_err());
    assert!(generate_hn(
        &SymBilinearContext::laplace(Q, 2).unwrap(),
        4,
        1,
        FrameShape::Orthogonal,
        1
    )
    .is_err());
}

#[test]
fn generator_with_nonstandard_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let u = sample::invertible(&mut rng, QI, 3, 2);
    let a = u.mul(&u.transpose()).unwrap();
    let ctx = SymBilinearContext::new(a).unwrap().with_factor(u).unwrap();
    let ex = generate_hn(&ctx, 3, 2, FrameShape::Tangent, 5).unwrap();
    assert!(check_direct_ctx(&ctx, &ex.p).unwrap().is_nilpotent);
    assert!(check_omega(&ex.frame, None).unwrap().is_nilpotent);
    assert!(!ex.frame.gram().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn scaling_keeps_first_vanish(seed in 0u64..1000, c in 1i64..4) {
        let ctx = SymBilinearContext::laplace(QI, 3).unwrap();
        let ex = generate_hn(&ctx, 4, 1, FrameShape::Tangent, seed).unwrap();
        let a = run_vc(&VcExperiment::new(ctx.delta().clone(), ex.p.clone(), 5)).unwrap();
        let scaled = ex.p.scale(&Scalar::gaussian_int(c, 1));
        let b = run_vc(&VcExperiment::new(ctx.delta().clone(), scaled, 5)).unwrap();
        prop_assert_eq!(a.first_vanish, b.first_vanish);
        prop_assert_eq!(a.degree_check, Some(true));
    }

    #[test]
    fn conjugation_keeps_sequence_shape(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample::symmetric_invertible(&mut rng, QI, 2, 2);
        let p = sample::homogeneous(&mut rng, QI, 2, 3, 0.6, 2);
        let u = sample::invertible(&mut rng, QI, 2, 2);
        let ctx = SymBilinearContext::new(a).unwrap();
        let conj = ctx.conjugate(&u).unwrap();
        let r1 = run_vc(&VcExperiment::new(ctx.delta().clone(), p.clone(), 4)).unwrap();
        let r2 = run_vc(&VcExperiment::new(conj.delta().clone(), phi(&p, &u).unwrap(), 4)).unwrap();
        prop_assert_eq!(r1.first_vanish, r2.first_vanish);
        let d1: Vec<_> = r1.entries.iter().map(|e| e.degree).collect();
        let d2: Vec<_> = r2.entries.iter().map(|e| e.degree).collect();
        prop_assert_eq!(d1, d2);
    }
}

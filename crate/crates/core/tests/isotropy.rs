use nilvc::algebra::{Field, Scalar};
use nilvc::diffops::SymBilinearContext;
use nilvc::isotropy::*;
use nilvc::poly::{parse_poly, Poly};
use nilvc::sample;
use nilvc::vc::{generate_hn, FrameShape};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rationals;
const QI: Field = Field::GaussianRationals;

fn poly(s: &str, n: usize, f: Field) -> Poly {
    parse_poly(s, n, f, false).unwrap()
}

fn laplace(f: Field, n: usize) -> BilinearFormContext {
    BilinearFormContext::new(SymBilinearContext::laplace(f, n).unwrap()).unwrap()
}

#[test]
fn small_pairings() {
    let fc = laplace(Q, 2);
    let z1sq = poly("z1^2", 2, Q);
    assert_eq!(bform_apply(&fc, &z1sq, &z1sq).unwrap(), poly("2", 2, Q));
    assert_eq!(bform_eval(&fc, &z1sq, &z1sq).unwrap(), Scalar::from_i64(Q, 2));
    assert!(bform_eval(&fc, &poly("z1", 2, Q), &poly("z2", 2, Q))
        .unwrap()
        .is_zero());
    assert!(bform_apply(&fc, &poly("z1", 1, Q), &z1sq).is_err());
}

#[test]
fn isotropic_power_suite() {
    let fc = laplace(QI, 2);
    let p = poly("(z1 + i*z2)^4", 2, QI);
    let r = isotropy_suite(&fc, &p, 4, 1).unwrap();
    assert!(r.all_vanished(), "{:?}", r.violations);
    assert!(r.rows.iter().any(|x| x.generator_id == "dP/dz1"));
    assert!(r.rows.iter().any(|x| x.generator_id == "self" && x.m == 4));
    let json = serde_json::to_value(&r.rows[0]).unwrap();
    assert!(json.get("generator-id").is_some());
}

#[test]
fn generated_polynomials_are_isotropic() {
    let ctx = SymBilinearContext::laplace(QI, 3).unwrap();
    let fc = BilinearFormContext::new(ctx.clone()).unwrap();
    for (seed, shape) in [(1, FrameShape::Orthogonal), (2, FrameShape::Tangent)] {
        let ex = generate_hn(&ctx, 3, 2, shape, seed).unwrap();
        let r = isotropy_suite(&fc, &ex.p, 3, seed).unwrap();
        assert!(r.all_vanished(), "{:?}", r.violations);
    }
}

#[test]
fn quadratic_suite() {
    let fc = laplace(QI, 2);
    let p = poly("(z1 + i*z2)^2", 2, QI);
    let r = quadratic_isotropy(&fc, &p, 4, 3).unwrap();
    assert!(r.all_vanished());
    assert!(r.rows.iter().any(|x| x.generator_id == "P"));
    assert!(quadratic_isotropy(&fc, &poly("(z1 + i*z2)^3", 2, QI), 2, 3).is_err());
    assert!(isotropy_suite(&fc, &p, 2, 3).is_err());
}

#[test]
fn suite_rejects_non_nilpotent() {
    let fc = laplace(QI, 2);
    assert!(isotropy_suite(&fc, &poly("z1^3", 2, QI), 2, 0).is_err());
    let singular = SymBilinearContext::new(nilvc::algebra::Matrix::zeros(Q, 2, 2)).unwrap();
    assert!(BilinearFormContext::new(singular).is_err());
}

#[test]
fn gram_is_nondegenerate() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=3 {
        let a = sample::symmetric_invertible(&mut rng, Q, n, 3);
        let fc = BilinearFormContext::new(SymBilinearContext::new(a).unwrap()).unwrap();
        for e in 0..=4 {
            assert!(fc.is_nondegenerate(e).unwrap(), "n={n} e={e}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pairing_is_symmetric(seed in 0u64..10_000, d in 1u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample::symmetric_invertible(&mut rng, Q, 3, 3);
        let fc = BilinearFormContext::new(SymBilinearContext::new(a).unwrap()).unwrap();
        let f = sample::homogeneous(&mut rng, Q, 3, d, 0.5, 3);
        let g = sample::homogeneous(&mut rng, Q, 3, d, 0.5, 3);
        prop_assert_eq!(bform_eval(&fc, &f, &g).unwrap(), bform_eval(&fc, &g, &f).unwrap());
    }
}

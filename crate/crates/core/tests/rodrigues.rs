use nilvc::algebra::{Field, Scalar};
use nilvc::poly::{parse_poly, Poly};
use nilvc::rodrigues::oracle::{self, proportional};
use nilvc::rodrigues::*;
use nilvc::Error;
use proptest::prelude::*;

const Q: Field = Field::Rationals;

fn r(n: i64, d: i64) -> Scalar {
    Scalar::ratio(Q, n, d)
}

fn poly(s: &str, n: usize) -> Poly {
    parse_poly(s, n, Q, false).unwrap()
}

fn one_var_families() -> Vec<WeightFamily> {
    vec![
        WeightFamily::hermite(),
        WeightFamily::laguerre(&r(1, 2)).unwrap(),
        WeightFamily::laguerre(&r(0, 1)).unwrap(),
        WeightFamily::jacobi(&r(1, 3), &r(-1, 2)).unwrap(),
        WeightFamily::gegenbauer(&r(1, 1)).unwrap(),
        WeightFamily::gegenbauer(&r(0, 1)).unwrap(),
    ]
}

#[test]
fn hermite_small_cases() {
    let h = WeightFamily::hermite();
    assert_eq!(generate_1d(&h, 0).unwrap(), poly("1", 1));
    assert_eq!(generate_1d(&h, 1).unwrap(), poly("2*z1", 1));
    assert_eq!(generate_1d(&h, 2).unwrap(), poly("4*z1^2 - 2", 1));
}

#[test]
fn recurrences_agree() {
    let hermite = oracle::hermite(8);
    let half = r(1, 2);
    let laguerre = oracle::laguerre(&half, 8);
    let gegen = oracle::gegenbauer(&r(1, 1), 8);
    let (h, l, g) = (
        WeightFamily::hermite(),
        WeightFamily::laguerre(&half).unwrap(),
        WeightFamily::gegenbauer(&r(1, 1)).unwrap(),
    );
    for m in 0..=8u32 {
        assert_eq!(generate_1d(&h, m).unwrap(), hermite[m as usize], "hermite {m}");
        assert_eq!(generate_1d(&l, m).unwrap(), laguerre[m as usize], "laguerre {m}");
        assert_eq!(generate_1d(&g, m).unwrap(), gegen[m as usize], "gegenbauer {m}");
    }
}

#[test]
fn gegenbauer_specializations() {
    let t = oracle::chebyshev_t(8);
    let u = oracle::chebyshev_u(8);
    let p = oracle::legendre(8);
    for (lambda, oracle) in [(r(0, 1), &t), (r(1, 1), &u), (r(1, 2), &p)] {
        let fam = WeightFamily::gegenbauer(&lambda).unwrap();
        for m in 0..=8u32 {
            let f = generate_1d(&fam, m).unwrap();
            assert!(
                proportional(&f, &oracle[m as usize]).is_some(),
                "lambda {lambda:?} m {m}"
            );
        }
    }
    // normalized to 1 at x = 1, so Legendre is reproduced exactly
    let leg = WeightFamily::gegenbauer(&r(1, 2)).unwrap();
    assert_eq!(generate_1d(&leg, 5).unwrap(), p[5]);
}

#[test]
fn denominators_clear_and_degrees_match() {
    for fam in one_var_families() {
        for m in 0..=10u32 {
            let f = generate_1d(&fam, m).unwrap();
            assert_eq!(f.degree(), Some(m as i64), "{} m={m}", fam.name);
        }
    }
}

#[test]
fn hermite_orthogonality_multipliers() {
    let h = WeightFamily::hermite();
    assert!(orthogonality_check(&h, &[1], &[2]).unwrap().is_zero());
    assert!(orthogonality_check(&h, &[0], &[2]).unwrap().is_zero());
    let d = orthogonality_check(&h, &[1], &[1]).unwrap();
    assert_eq!(d.value, "2");
    assert_eq!(d.unit, "sqrt(pi)");
}

#[test]
fn one_variable_orthogonality() {
    for fam in one_var_families() {
        for mult in orthogonality_table(&fam, 6).unwrap() {
            if mult.m1 == mult.m2 {
                assert!(mult.is_positive(), "{} {:?}", fam.name, mult.m1);
            } else {
                assert!(mult.is_zero(), "{} {:?} {:?}", fam.name, mult.m1, mult.m2);
            }
        }
    }
}

#[test]
fn products_match_one_variable_factors() {
    let hh = WeightFamily::product(vec![WeightFamily::hermite(), WeightFamily::hermite()]).unwrap();
    assert_eq!(generate(&hh, &[1, 0]).unwrap(), poly("2*z1", 2));
    let l = WeightFamily::laguerre(&r(1, 2)).unwrap();
    let j = WeightFamily::jacobi(&r(1, 2), &r(0, 1)).unwrap();
    let lj = WeightFamily::product(vec![l.clone(), j.clone()]).unwrap();
    for m in indices(2, 4) {
        let f = generate(&lj, &m).unwrap();
        let a = generate_1d(&l, m[0]).unwrap().remap_vars(&[0], 2);
        let b = generate_1d(&j, m[1]).unwrap().remap_vars(&[1], 2);
        assert_eq!(f, &a * &b, "m = {m:?}");
    }
    for mult in orthogonality_table(&lj, 3).unwrap() {
        assert_eq!(mult.is_zero(), mult.m1 != mult.m2);
    }
}

#[test]
fn printed_product_seed_only_fits_constant_g() {
    let hh = WeightFamily::product(vec![WeightFamily::hermite(), WeightFamily::hermite()]).unwrap();
    for m in indices(2, 3) {
        assert_eq!(
            generate_multi(&hh, &m, MultiSeed::Printed).unwrap(),
            generate_multi(&hh, &m, MultiSeed::Corrected).unwrap()
        );
    }
    let l = WeightFamily::laguerre(&r(1, 2)).unwrap();
    let ll = WeightFamily::product(vec![l.clone(), l]).unwrap();
    let printed = generate_multi(&ll, &[1, 0], MultiSeed::Printed).unwrap();
    assert_eq!(printed.degree(), Some(2));
    assert_ne!(
        printed,
        generate_multi(&ll, &[1, 0], MultiSeed::Corrected).unwrap()
    );
}

#[test]
fn ball_family() {
    let b = WeightFamily::ball(2, &r(1, 1)).unwrap();
    assert!(generate(&b, &[0, 0]).unwrap().is_constant());
    for m in indices(2, 4) {
        let f = generate(&b, &m).unwrap();
        assert_eq!(f.degree(), Some(m.iter().sum::<u32>() as i64));
    }
    for mult in orthogonality_table(&b, 3).unwrap() {
        let (d1, d2): (u32, u32) = (mult.m1.iter().sum(), mult.m2.iter().sum());
        if mult.m1 == mult.m2 {
            assert!(mult.is_positive());
        } else if d1 != d2 {
            assert!(mult.is_zero(), "{:?} {:?}", mult.m1, mult.m2);
        }
    }
}

#[test]
fn simplex_family() {
    let kappa = [r(1, 2), r(1, 1), r(0, 1)];
    let s = WeightFamily::simplex(&kappa).unwrap();
    for m in indices(2, 4) {
        let f = generate(&s, &m).unwrap();
        assert_eq!(f.degree(), Some(m.iter().sum::<u32>() as i64));
    }
    for mult in orthogonality_table(&s, 3).unwrap() {
        let (d1, d2): (u32, u32) = (mult.m1.iter().sum(), mult.m2.iter().sum());
        if mult.m1 == mult.m2 {
            assert!(mult.is_positive());
        } else if d1 != d2 {
            assert!(mult.is_zero(), "{:?} {:?}", mult.m1, mult.m2);
        }
    }
    assert!(matches!(
        generate_multi(&s, &[1, 0], MultiSeed::Printed),
        Err(Error::NonPolynomial(_))
    ));
}

#[test]
fn simplex_in_one_variable_is_jacobi() {
    let (k1, k2) = (r(1, 3), r(2, 1));
    let s = WeightFamily::simplex(&[k1.clone(), k2.clone()]).unwrap();
    let j = WeightFamily::jacobi(&k1, &(&k2 - &r(1, 2))).unwrap();
    let y = poly("1 - 2*z1", 1);
    for m in 0..=5u32 {
        let f = generate(&s, &[m]).unwrap();
        let g = generate_1d(&j, m)
            .unwrap()
            .compose(std::slice::from_ref(&y))
            .unwrap();
        assert!(proportional(&f, &g).is_some(), "m = {m}");
    }
}

#[test]
fn parameter_ranges() {
    assert!(WeightFamily::laguerre(&r(-1, 1)).is_err());
    assert!(WeightFamily::jacobi(&r(0, 1), &r(-3, 2)).is_err());
    assert!(WeightFamily::gegenbauer(&r(-1, 2)).is_err());
    assert!(WeightFamily::ball(2, &r(1, 2)).is_err());
    assert!(WeightFamily::simplex(&[r(0, 1), r(-1, 2)]).is_err());
    assert!(WeightFamily::product(vec![WeightFamily::ball(2, &r(1, 1)).unwrap()]).is_err());
    assert!(generate(&WeightFamily::hermite(), &[1, 2]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn laguerre_matches_recurrence(num in -3i64..12, den in 1i64..5, m in 0u32..7) {
        prop_assume!(num > -den);
        let alpha = r(num, den);
        let fam = WeightFamily::laguerre(&alpha).unwrap();
        prop_assert_eq!(generate_1d(&fam, m).unwrap(), oracle::laguerre(&alpha, m)[m as usize].clone());
    }
}

use nilvc::algebra::Field;
use nilvc::laurent_vc::*;
use nilvc::poly::{parse_poly, Poly};
use nilvc::sample;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rationals;

fn laurent(s: &str, n: usize) -> Poly {
    parse_poly(s, n, Q, true).unwrap()
}

#[test]
fn worked_example() {
    let r = restated_vc(&[2], &laurent("z1", 1), 8, true).unwrap();
    assert!(r.nilpotent_up_to_bound && r.direct_agrees && r.operator_agrees);
    assert_eq!(r.first_vanish, Some(2));
    assert!(r.stable_zero);
    assert_eq!(r.phase2[0].value.as_deref(), Some("1"));
}

#[test]
fn monomial_seed_is_not_nilpotent() {
    let r = restated_vc(&[1, 1], &laurent("z1*z2", 2), 4, false).unwrap();
    assert!(!r.phase1[0].zero);
    assert!(!r.nilpotent_up_to_bound);
    assert!(r.direct_agrees && r.operator_agrees);
}

#[test]
fn restated_rejects_bad_input() {
    assert!(restated_vc(&[1], &laurent("z1", 1), 3, false).is_err());
    assert!(restated_vc(&[2, 0], &laurent("z1", 1), 3, false).is_err());
    assert!(restated_vc(&[2], &laurent("z1^-1", 1), 3, false).is_err());
    assert!(restated_vc(&[2], &laurent("z1", 1), 0, false).is_err());
}

#[test]
fn constant_term_probe() {
    let p = LaurentProbe {
        f: laurent("z1", 1),
        g: laurent("z1^-3 + 1", 1),
        mode: ProbeMode::ConstantTerm,
        m_max: 8,
    };
    let r = probe(&p).unwrap();
    assert!(r.hypothesis_met && !r.contradiction);
    let nonzero: Vec<u32> = r.rows.iter().filter(|x| !x.zero).map(|x| x.m).collect();
    assert_eq!(nonzero, vec![3]);
    assert_eq!(r.vanishes_from, Some(4));
}

#[test]
fn hypothesis_not_met_is_a_report() {
    let p = LaurentProbe {
        f: laurent("z1 + z1^-1", 1),
        g: laurent("1", 1),
        mode: ProbeMode::ConstantTerm,
        m_max: 5,
    };
    let r = probe(&p).unwrap();
    assert!(!r.hypothesis_met);
    assert_eq!(r.hypothesis_failure, Some(2));
    assert!(!r.contradiction);
}

#[test]
fn zero_g_vanishes_everywhere() {
    for mode in [ProbeMode::ConstantTerm, ProbeMode::HolomorphicPart] {
        let p = LaurentProbe {
            f: laurent("z1^-1*z2", 2),
            g: Poly::zero(Q, 2),
            mode,
            m_max: 4,
        };
        let r = probe(&p).unwrap();
        assert!(r.rows.iter().all(|x| x.zero));
        assert_eq!(r.vanishes_from, Some(1));
    }
}

#[test]
fn holomorphic_probe_window() {
    let p = LaurentProbe {
        f: laurent("z1^-2*z2 + z1^-1*z2^-1", 2),
        g: laurent("z1^3 + z2", 2),
        mode: ProbeMode::HolomorphicPart,
        m_max: 6,
    };
    let r = probe(&p).unwrap();
    assert!(r.hypothesis_met);
    assert!(r.vanishes_from.is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn restatement_matches_operator(seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2usize);
        let total = rng.gen_range(2..=3u32);
        let mut a = vec![0u32; n];
        for _ in 0..total {
            a[rng.gen_range(0..n)] += 1;
        }
        let p = sample::poly(&mut rng, Q, n, 0, 3, 3, 3);
        let r = restated_vc(&a, &p, 5, false).unwrap();
        prop_assert!(r.direct_agrees);
        prop_assert!(r.operator_agrees);
    }
}

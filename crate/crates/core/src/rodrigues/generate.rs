use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::{is_positive, monomial_power, FamilyKind, WeightFamily};
use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};
use crate::poly::{format_poly, Poly, RationalFn};

/// Seed raised inside `Lambda_s^{|m|}` for multi-indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiSeed {
    /// `P^{|m|}` for every family.
    Printed,
    /// `P^{|m|}` for the ball, `x^m P^{|m|}` for the simplex and
    /// `prod g(x_i)^{m_i}` for products.
    #[default]
    Corrected,
}

fn to_poly(r: &RationalFn, what: &str) -> Result<Poly> {
    r.to_poly()
        .ok_or_else(|| Error::NonPolynomial(format!("{what} left the denominator {r:?}")))
}

/// `c_m (d/dx + rho)^m P^m`.
pub fn generate_1d(family: &WeightFamily, m: u32) -> Result<Poly> {
    if family.nvars != 1 {
        return Err(Error::precondition("generate_1d needs a one-variable family"));
    }
    let rho = &family.rho[0];
    let mut h = RationalFn::from_poly(family.p.pow(m), rho.bases().clone());
    for _ in 0..m {
        h = h.derivative(0).add(&h.mul(rho));
    }
    Ok(to_poly(&h, &format!("{} m={m}", family.name))?.scale(&family.c1(m)))
}

fn seed(family: &WeightFamily, m: &[u32], mode: MultiSeed) -> Poly {
    let total: u32 = m.iter().sum();
    match (&family.kind, mode) {
        (FamilyKind::Simplex { .. }, MultiSeed::Corrected) => &monomial_power(m) * &family.p.pow(total),
        (FamilyKind::Product { .. }, MultiSeed::Corrected) => family
            .factors()
            .iter()
            .enumerate()
            .fold(Poly::one(Field::Rationals, family.nvars), |acc, (i, f)| {
                &acc * &f.p.pow(m[i]).remap_vars(&[i], family.nvars)
            }),
        _ => family.p.pow(total),
    }
}

/// The `s^m` coefficient `V_m` of `Lambda_s^{|m|}` applied to the seed,
/// with `s` carried as extra variables that are never differentiated.
pub fn s_coefficient(family: &WeightFamily, m: &[u32], mode: MultiSeed) -> Result<Poly> {
    family.check_index(m)?;
    let n = family.nvars;
    let total: u32 = m.iter().sum();
    let lift = |p: &Poly| p.extend_vars(n);
    let bases: std::sync::Arc<[Poly]> = family.rho[0].bases().iter().map(lift).collect();
    let rho: Vec<RationalFn> = family
        .rho
        .iter()
        .map(|r| RationalFn::new(lift(r.numerator()), r.denominator_exps().to_vec(), bases.clone()))
        .collect::<Result<_>>()?;
    let s: Vec<Poly> = (0..n)
        .map(|i| Poly::var(Field::Rationals, 2 * n, n + i))
        .collect();
    let want: Vec<i32> = m.iter().map(|&k| k as i32).collect();
    // s-parts not below m never reach the s^m coefficient
    let restrict = |h: RationalFn, keep: &dyn Fn(&[i32]) -> bool| {
        let num = h.numerator().filter(|mono| keep(&mono.exps()[n..]));
        RationalFn::new(num, h.denominator_exps().to_vec(), h.bases().clone()).expect("same ring")
    };
    let below = |e: &[i32]| e.iter().zip(&want).all(|(a, b)| a <= b);
    let mut h = RationalFn::from_poly(lift(&seed(family, m, mode)), bases);
    for _ in 0..total {
        let mut next = h.zero_like();
        for i in (0..n).filter(|&i| m[i] > 0) {
            next = next.add(&h.derivative(i).add(&h.mul(&rho[i])).mul_poly(&s[i]));
        }
        h = restrict(next, &below);
    }
    let h = to_poly(&restrict(h, &|e| e == want), &format!("{} m={m:?}", family.name))?;
    Ok(Poly::from_terms(
        Field::Rationals,
        n,
        h.terms().iter().map(|(mono, c)| (mono.truncate(n), c.clone())),
    ))
}

/// `f_m = c_m V_m` with the family's multi-index normalization.
pub fn generate_multi(family: &WeightFamily, m: &[u32], mode: MultiSeed) -> Result<Poly> {
    if family.nvars == 1 && !matches!(family.kind, FamilyKind::Simplex { .. } | FamilyKind::Ball { .. }) {
        return Err(Error::precondition(
            "generate_multi needs a multivariate or product family",
        ));
    }
    Ok(s_coefficient(family, m, mode)?.scale(&family.c_multi(m)))
}

/// Dispatches on the family: one-variable families take `m = [k]`.
pub fn generate(family: &WeightFamily, m: &[u32]) -> Result<Poly> {
    family.check_index(m)?;
    match family.kind {
        FamilyKind::Ball { .. } | FamilyKind::Simplex { .. } | FamilyKind::Product { .. } => {
            generate_multi(family, m, MultiSeed::Corrected)
        }
        _ => generate_1d(family, m[0]),
    }
}

/// `int f_{m1} f_{m2} w` as an exact multiple of the family unit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Multiplier {
    pub m1: Vec<u32>,
    pub m2: Vec<u32>,
    pub value: String,
    pub unit: String,
    #[serde(skip)]
    pub exact: Scalar,
}

impl Multiplier {
    pub fn is_zero(&self) -> bool {
        self.exact.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        is_positive(&self.exact)
    }
}

pub fn orthogonality_check(family: &WeightFamily, m1: &[u32], m2: &[u32]) -> Result<Multiplier> {
    let f = generate(family, m1)?;
    let g = if m1 == m2 {
        f.clone()
    } else {
        generate(family, m2)?
    };
    let exact = family.integrate(&(&f * &g));
    Ok(Multiplier {
        m1: m1.to_vec(),
        m2: m2.to_vec(),
        value: exact.to_plain_string(),
        unit: family.unit(),
        exact,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RodriguesRow {
    pub m: Vec<u32>,
    pub degree: Option<i64>,
    pub poly: String,
}

/// Generates every index with `|m| <= upto` in parallel, in graded order.
pub fn generate_table(family: &WeightFamily, upto: u32) -> Result<Vec<RodriguesRow>> {
    let idx = indices(family.nvars, upto);
    idx.par_iter()
        .map(|m| {
            let p = generate(family, m)?;
            Ok(RodriguesRow {
                m: m.clone(),
                degree: p.degree(),
                poly: format_poly(&p),
            })
        })
        .collect()
}

/// All `m` with `|m| <= upto`, graded.
pub fn indices(n: usize, upto: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=upto {
        for mono in crate::poly::monomials_of_degree(n, d) {
            out.push(mono.exps().iter().map(|&e| e as u32).collect());
        }
    }
    out
}

/// Every pairwise multiplier for `|m| <= upto`.
pub fn orthogonality_table(family: &WeightFamily, upto: u32) -> Result<Vec<Multiplier>> {
    let idx = indices(family.nvars, upto);
    let polys: Vec<Poly> = idx
        .par_iter()
        .map(|m| generate(family, m))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..idx.len())
        .flat_map(|i| (i..idx.len()).map(move |j| (i, j)))
        .collect();
    Ok(pairs
        .par_iter()
        .map(|&(i, j)| {
            let exact = family.integrate(&(&polys[i] * &polys[j]));
            Multiplier {
                m1: idx[i].clone(),
                m2: idx[j].clone(),
                value: exact.to_plain_string(),
                unit: family.unit(),
                exact,
            }
        })
        .collect())
}

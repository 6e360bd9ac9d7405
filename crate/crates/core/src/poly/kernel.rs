//! Denominator-free coefficient lanes for the hot loops.
//!
//! Rational and Gaussian coefficients are scaled by a common denominator so
//! the inner loops only multiply and add integers; the denominator is divided
//! back out once per output term.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use crate::algebra::{Field, Scalar};

pub(crate) trait Lane: Clone {
    fn lane_is_zero(&self) -> bool;
    fn add_assign(&mut self, rhs: &Self, p: u64);
    fn mul(&self, rhs: &Self, p: u64) -> Self;
    fn mul_big(&self, k: &BigInt, p: u64) -> Self;
}

impl Lane for BigInt {
    fn lane_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, rhs: &Self, _: u64) {
        *self += rhs;
    }
    fn mul(&self, rhs: &Self, _: u64) -> Self {
        self * rhs
    }
    fn mul_big(&self, k: &BigInt, _: u64) -> Self {
        self * k
    }
}

#[derive(Clone, Debug)]
pub(crate) struct GInt(pub BigInt, pub BigInt);

impl Lane for GInt {
    fn lane_is_zero(&self) -> bool {
        Zero::is_zero(&self.0) && Zero::is_zero(&self.1)
    }
    fn add_assign(&mut self, rhs: &Self, _: u64) {
        self.0 += &rhs.0;
        self.1 += &rhs.1;
    }
    fn mul(&self, rhs: &Self, _: u64) -> Self {
        if Zero::is_zero(&self.1) && Zero::is_zero(&rhs.1) {
            return GInt(&self.0 * &rhs.0, BigInt::zero());
        }
        GInt(
            &self.0 * &rhs.0 - &self.1 * &rhs.1,
            &self.0 * &rhs.1 + &self.1 * &rhs.0,
        )
    }
    fn mul_big(&self, k: &BigInt, _: u64) -> Self {
        GInt(&self.0 * k, &self.1 * k)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Res(pub u64);

impl Lane for Res {
    fn lane_is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add_assign(&mut self, rhs: &Self, p: u64) {
        self.0 = (self.0 + rhs.0) % p;
    }
    fn mul(&self, rhs: &Self, p: u64) -> Self {
        Res(self.0 * rhs.0 % p)
    }
    fn mul_big(&self, k: &BigInt, p: u64) -> Self {
        let r = k.mod_floor(&BigInt::from(p));
        Res(self.0 * r.iter_u64_digits().next().unwrap_or(0) % p)
    }
}

/// Terms of a polynomial scaled by `den`: the polynomial equals
/// `sum vals[i] * z^mono[i] / den`.
pub(crate) struct Cleared<L> {
    pub den: BigInt,
    pub terms: Vec<(Monomial, L)>,
}

pub(crate) trait LaneVisitor {
    type Out;
    fn visit<L: Lane + IntoScalar>(self, inputs: Vec<Cleared<L>>, p: u64) -> Self::Out;
}

pub(crate) trait IntoScalar {
    fn into_scalar(self, den: &BigInt, field: Field) -> Scalar;
}

impl IntoScalar for BigInt {
    fn into_scalar(self, den: &BigInt, _: Field) -> Scalar {
        Scalar::Q(BigRational::new(self, den.clone()))
    }
}

impl IntoScalar for GInt {
    fn into_scalar(self, den: &BigInt, _: Field) -> Scalar {
        Scalar::Qi(
            BigRational::new(self.0, den.clone()),
            BigRational::new(self.1, den.clone()),
        )
    }
}

impl IntoScalar for Res {
    fn into_scalar(self, _: &BigInt, field: Field) -> Scalar {
        Scalar::Fp {
            v: self.0 as u32,
            p: field.characteristic(),
        }
    }
}

fn lcm_all<'a>(it: impl Iterator<Item = &'a BigInt>) -> BigInt {
    it.fold(BigInt::one(), |acc, d| acc.lcm(d))
}

/// Converts each term list to integer lanes and hands them to `v`.
pub(crate) fn dispatch<V: LaneVisitor>(field: Field, inputs: &[&[(Monomial, Scalar)]], v: V) -> V::Out {
    match field {
        Field::Rationals => {
            let cleared = inputs
                .iter()
                .map(|terms| {
                    let den = lcm_all(terms.iter().map(|(_, c)| match c {
                        Scalar::Q(q) => q.denom(),
                        _ => unreachable!("field checked by caller"),
                    }));
                    let terms = terms
                        .iter()
                        .map(|(m, c)| {
                            let Scalar::Q(q) = c else { unreachable!() };
                            (m.clone(), q.numer() * (&den / q.denom()))
                        })
                        .collect();
                    Cleared { den, terms }
                })
                .collect();
            v.visit::<BigInt>(cleared, 0)
        }
        Field::GaussianRationals => {
            let cleared = inputs
                .iter()
                .map(|terms| {
                    let den = lcm_all(terms.iter().flat_map(|(_, c)| match c {
                        Scalar::Qi(a, b) => [a.denom(), b.denom()],
                        _ => unreachable!("field checked by caller"),
                    }));
                    let terms = terms
                        .iter()
                        .map(|(m, c)| {
                            let Scalar::Qi(a, b) = c else { unreachable!() };
                            (
                                m.clone(),
                                GInt(a.numer() * (&den / a.denom()), b.numer() * (&den / b.denom())),
                            )
                        })
                        .collect();
                    Cleared { den, terms }
                })
                .collect();
            v.visit::<GInt>(cleared, 0)
        }
        Field::PrimeField(p) => {
            let cleared = inputs
                .iter()
                .map(|terms| Cleared {
                    den: BigInt::one(),
                    terms: terms
                        .iter()
                        .map(|(m, c)| {
                            let Scalar::Fp { v, .. } = c else { unreachable!() };
                            (m.clone(), Res(*v as u64))
                        })
                        .collect(),
                })
                .collect();
            v.visit::<Res>(cleared, p as u64)
        }
    }
}

/// Turns an accumulator back into sorted canonical terms.
pub(crate) fn finish<L: Lane + IntoScalar>(
    acc: FxHashMap<Monomial, L>,
    den: &BigInt,
    field: Field,
) -> Vec<(Monomial, Scalar)> {
    let mut out: Vec<(Monomial, Scalar)> = acc
        .into_iter()
        .filter(|(_, c)| !c.lane_is_zero())
        .map(|(m, c)| (m, c.into_scalar(den, field)))
        .collect();
    out.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    out
}

pub(crate) struct MulVisitor(pub Field);

impl LaneVisitor for MulVisitor {
    type Out = Vec<(Monomial, Scalar)>;

    fn visit<L: Lane + IntoScalar>(self, inputs: Vec<Cleared<L>>, p: u64) -> Self::Out {
        let [a, b]: [Cleared<L>; 2] = inputs.try_into().ok().expect("two operands");
        let (small, big) = if a.terms.len() <= b.terms.len() {
            (&a, &b)
        } else {
            (&b, &a)
        };
        let mut acc: FxHashMap<Monomial, L> = FxHashMap::default();
        acc.reserve(big.terms.len() * small.terms.len().min(8));
        for (ms, cs) in &small.terms {
            for (mb, cb) in &big.terms {
                let prod = cs.mul(cb, p);
                acc.entry(ms.mul(mb))
                    .and_modify(|e| e.add_assign(&prod, p))
                    .or_insert(prod);
            }
        }
        finish(acc, &(&a.den * &b.den), self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_lane_reduces() {
        let mut a = Res(5);
        a.add_assign(&Res(4), 7);
        assert_eq!(a.0, 2);
        assert_eq!(Res(3).mul_big(&BigInt::from(-1), 7).0, 4);
    }

    #[test]
    fn gaussian_lane_multiplies() {
        let i = GInt(BigInt::zero(), BigInt::one());
        let sq = i.mul(&i, 0);
        assert_eq!(sq.0, BigInt::from(-1));
        assert!(Zero::is_zero(&sq.1));
    }
}

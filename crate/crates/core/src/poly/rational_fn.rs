use std::fmt;
use std::sync::Arc;

use super::poly::Poly;
use crate::algebra::Scalar;
use crate::error::{Error, Result};

/// Quotient `num / prod(bases[k]^exps[k])` over a fixed list of designated
/// base factors.
///
/// Denominators never leave the span of the bases, so no multivariate gcd is
/// needed: [`RationalFn::reduce`] strips base factors from the numerator while
/// exact division succeeds.
#[derive(Clone)]
pub struct RationalFn {
    num: Poly,
    exps: Vec<u32>,
    bases: Arc<[Poly]>,
}

impl RationalFn {
    pub fn from_poly(num: Poly, bases: Arc<[Poly]>) -> RationalFn {
        let k = bases.len();
        RationalFn {
            num,
            exps: vec![0; k],
            bases,
        }
    }

    /// `num / prod(bases^exps)`, reduced.
    pub fn new(num: Poly, exps: Vec<u32>, bases: Arc<[Poly]>) -> Result<RationalFn> {
        if exps.len() != bases.len() {
            return Err(Error::Shape("one exponent per base factor".into()));
        }
        for b in bases.iter() {
            num.check_compatible(b)?;
        }
        let mut r = RationalFn { num, exps, bases };
        r.reduce();
        Ok(r)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn bases(&self) -> &Arc<[Poly]> {
        &self.bases
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn zero_like(&self) -> RationalFn {
        RationalFn::from_poly(Poly::zero(self.num.field(), self.num.nvars()), self.bases.clone())
    }

    /// Divides out base factors from the numerator while possible.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.exps.iter_mut().for_each(|e| *e = 0);
            return;
        }
        for k in 0..self.exps.len() {
            while self.exps[k] > 0 {
                match self.num.div_exact(&self.bases[k]) {
                    Some(q) => {
                        self.num = q;
                        self.exps[k] -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    /// The polynomial value when every denominator exponent has cleared.
    pub fn to_poly(&self) -> Option<Poly> {
        self.exps.iter().all(|&e| e == 0).then(|| self.num.clone())
    }

    fn bring_to(&self, target: &[u32]) -> Poly {
        let mut n = self.num.clone();
        for (k, (&have, &want)) in self.exps.iter().zip(target).enumerate() {
            if want > have {
                n = &n * &self.bases[k].pow(want - have);
            }
        }
        n
    }

    fn combine(&self, rhs: &RationalFn, negate: bool) -> RationalFn {
        debug_assert!(Arc::ptr_eq(&self.bases, &rhs.bases) || self.bases == rhs.bases);
        let target: Vec<u32> = self.exps.iter().zip(&rhs.exps).map(|(a, b)| *a.max(b)).collect();
        let a = self.bring_to(&target);
        let b = rhs.bring_to(&target);
        let num = if negate { &a - &b } else { &a + &b };
        let mut r = RationalFn {
            num,
            exps: target,
            bases: self.bases.clone(),
        };
        r.reduce();
        r
    }

    pub fn add(&self, rhs: &RationalFn) -> RationalFn {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &RationalFn) -> RationalFn {
        self.combine(rhs, true)
    }

    pub fn mul(&self, rhs: &RationalFn) -> RationalFn {
        let mut r = RationalFn {
            num: &self.num * &rhs.num,
            exps: self.exps.iter().zip(&rhs.exps).map(|(a, b)| a + b).collect(),
            bases: self.bases.clone(),
        };
        r.reduce();
        r
    }

    pub fn mul_poly(&self, p: &Poly) -> RationalFn {
        let mut r = RationalFn {
            num: &self.num * p,
            exps: self.exps.clone(),
            bases: self.bases.clone(),
        };
        r.reduce();
        r
    }

    pub fn scale(&self, c: &Scalar) -> RationalFn {
        RationalFn {
            num: self.num.scale(c),
            exps: if c.is_zero() {
                vec![0; self.exps.len()]
            } else {
                self.exps.clone()
            },
            bases: self.bases.clone(),
        }
    }

    /// Partial derivative in `z_i` by the quotient rule over the bases.
    pub fn derivative(&self, i: usize) -> RationalFn {
        let active: Vec<usize> = (0..self.exps.len()).filter(|&k| self.exps[k] > 0).collect();
        let prod_except = |skip: Option<usize>| {
            active
                .iter()
                .filter(|&&k| Some(k) != skip)
                .fold(Poly::one(self.num.field(), self.num.nvars()), |acc, &k| {
                    &acc * &self.bases[k]
                })
        };
        let mut num = &self.num.derivative(i) * &prod_except(None);
        for &k in &active {
            let e = Scalar::from_i64(self.num.field(), self.exps[k] as i64);
            let t = &(&self.num * &self.bases[k].derivative(i)) * &prod_except(Some(k));
            num = &num - &t.scale(&e);
        }
        let mut exps = self.exps.clone();
        for &k in &active {
            exps[k] += 1;
        }
        let mut r = RationalFn {
            num,
            exps,
            bases: self.bases.clone(),
        };
        r.reduce();
        r
    }

    /// Cross-multiplied equality.
    pub fn equals(&self, rhs: &RationalFn) -> bool {
        let target: Vec<u32> = self.exps.iter().zip(&rhs.exps).map(|(a, b)| *a.max(b)).collect();
        self.bring_to(&target) == rhs.bring_to(&target)
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        for (k, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                write!(f, " / ({})^{}", self.bases[k], e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::poly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, 1, Field::Rationals, false).unwrap()
    }

    fn bases() -> Arc<[Poly]> {
        vec![p("x1"), p("1 - x1^2")].into()
    }

    #[test]
    fn reduction_clears_factors() {
        let r = RationalFn::new(p("x1^3 - x1"), vec![1, 1], bases()).unwrap();
        assert_eq!(r.to_poly(), Some(p("-1")));
    }

    #[test]
    fn quotient_rule() {
        // d/dx (1/x) = -1/x^2
        let r = RationalFn::new(p("1"), vec![1, 0], bases()).unwrap();
        let d = r.derivative(0);
        assert_eq!(d.numerator(), &p("-1"));
        assert_eq!(d.denominator_exps(), &[2, 0]);
    }

    #[test]
    fn sums_use_common_denominators() {
        let a = RationalFn::new(p("1"), vec![1, 0], bases()).unwrap();
        let b = RationalFn::new(p("x1"), vec![0, 1], bases()).unwrap();
        let s = a.add(&b);
        // 1/x + x/(1-x^2) = (1 - x^2 + x^2)/(x(1-x^2))
        assert_eq!(s.numerator(), &p("1"));
        assert_eq!(s.denominator_exps(), &[1, 1]);
        assert!(s.sub(&b).equals(&a));
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use super::kernel::{dispatch, MulVisitor};
use super::monomial::Monomial;
use crate::algebra::{Field, Matrix, RingElem, Scalar};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are stored in descending graded-lex order with no zero coefficients,
/// so structural equality is mathematical equality. Exponents may be
/// negative, in which case the value is a Laurent polynomial; see
/// [`LaurentPoly`]. Operations that need genuine polynomials (parsing with
/// `laurent = false`, homogenization) check [`Poly::is_polynomial`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: Vec<(Monomial, Scalar)>,
}

/// Laurent polynomials share the representation of [`Poly`].
pub type LaurentPoly = Poly;

impl Poly {
    pub fn zero(field: Field, nvars: usize) -> Poly {
        Poly {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(field: Field, nvars: usize) -> Poly {
        Poly::constant(nvars, Scalar::one(field))
    }

    pub fn constant(nvars: usize, c: Scalar) -> Poly {
        Poly::monomial(Monomial::one(nvars), c)
    }

    /// `z_i` (zero-based index).
    pub fn var(field: Field, nvars: usize, i: usize) -> Poly {
        Poly::monomial(Monomial::var(nvars, i), Scalar::one(field))
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Poly {
        let field = c.field();
        let nvars = m.nvars();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { field, nvars, terms }
    }

    /// Sums arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Poly {
        let mut acc: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            debug_assert_eq!(c.field(), field);
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Poly::from_sorted_unchecked(field, nvars, {
            let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
            v
        })
    }

    /// Linear form `sum coeffs[i] * z_i`.
    pub fn linear_form(field: Field, coeffs: &[Scalar]) -> Poly {
        let n = coeffs.len();
        Poly::from_terms(
            field,
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub(crate) fn from_sorted_unchecked(field: Field, nvars: usize, terms: Vec<(Monomial, Scalar)>) -> Poly {
        Poly { field, nvars, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Total degree; `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Smallest total degree of a term (the order `o(P)`); `None` for zero.
    pub fn order(&self) -> Option<i64> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.get(var)).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.degree(), self.order()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_holomorphic())
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Scalar::zero(self.field))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn homogeneous_component(&self, d: i64) -> Poly {
        self.filter(|m| m.degree() == d)
    }

    /// Terms whose exponent vectors are componentwise nonnegative.
    pub fn holomorphic_part(&self) -> Poly {
        self.filter(Monomial::is_holomorphic)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect(),
        }
    }

    /// Keeps terms of total degree at most `cap`.
    pub fn truncate_degree(&self, cap: i64) -> Poly {
        self.filter(|m| m.degree() <= cap)
    }

    pub fn check_compatible(&self, rhs: &Poly) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field, rhs.field));
        }
        if self.nvars != rhs.nvars {
            return Err(Error::NvarsMismatch(self.nvars, rhs.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Poly) -> Result<Poly> {
        self.check_compatible(rhs)?;
        Ok(self.merge(rhs, false))
    }

    pub fn try_sub(&self, rhs: &Poly) -> Result<Poly> {
        self.check_compatible(rhs)?;
        Ok(self.merge(rhs, true))
    }

    pub fn try_mul(&self, rhs: &Poly) -> Result<Poly> {
        self.check_compatible(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    fn merge(&self, rhs: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let ord = match (self.terms.get(i), rhs.terms.get(j)) {
                (Some(a), Some(b)) => b.0.cmp(&a.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let (m, c) = &rhs.terms[j];
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &rhs.terms[j].1
                    } else {
                        &self.terms[i].1 + &rhs.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly::from_sorted_unchecked(self.field, self.nvars, out)
    }

    fn mul_unchecked(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        let terms = dispatch(self.field, &[&self.terms, &rhs.terms], MulVisitor(self.field));
        Poly::from_sorted_unchecked(self.field, self.nvars, terms)
    }

    /// Multiplies by `c * z^m`; the term order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        Poly::from_sorted_unchecked(
            self.field,
            self.nvars,
            self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        self.mul_term(&Monomial::one(self.nvars), c)
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field, self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Laurent power allowing negative `k` for single-term values.
    pub fn pow_laurent(&self, k: i32) -> Result<Poly> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        match self.terms.as_slice() {
            [(m, c)] => {
                let inv = c.inv().expect("nonzero coefficient");
                Ok(Poly::monomial(m.pow(k), inv.pow((-k) as u64)))
            }
            _ => Err(Error::precondition(
                "negative power of a polynomial with more than one term",
            )),
        }
    }

    /// Partial derivative with respect to `z_i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.get(i);
            if e == 0 {
                continue;
            }
            let c = c * &Scalar::from_i64(self.field, e as i64);
            if c.is_zero() {
                continue;
            }
            let mut m = m.clone();
            m.exps_mut()[i] -= 1;
            terms.push((m, c));
        }
        // lowering one exponent keeps relative grlex order only within a
        // degree; re-sort to stay canonical
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly::from_sorted_unchecked(self.field, self.nvars, terms)
    }

    /// Evaluates at a point.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::NvarsMismatch(self.nvars, point.len()));
        }
        let mut acc = Scalar::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e >= 0 {
                    t = &t * &x.pow(e as u64);
                } else {
                    let inv = x
                        .inv()
                        .ok_or_else(|| Error::precondition("negative power of zero"))?;
                    t = &t * &inv.pow((-e) as u64);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes `z_i -> images[i]`. Images must share field and variable
    /// count; negative exponents require single-term images.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::NvarsMismatch(self.nvars, images.len()));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let (field, nv) = (first.field, first.nvars);
        for g in images {
            if g.field != field || g.nvars != nv {
                return Err(Error::precondition("images must share field and variables"));
            }
        }
        if field != self.field {
            return Err(Error::FieldMismatch(self.field, field));
        }
        let mut cache: Vec<FxHashMap<i32, Poly>> = vec![FxHashMap::default(); self.nvars];
        let mut acc = Poly::zero(field, nv);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(nv, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache[i].contains_key(&e) {
                    let p = images[i].pow_laurent(e)?;
                    cache[i].insert(e, p);
                }
                t = &t * &cache[i][&e];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// `P(M z)`: each `z_i` becomes `sum_j M_ij z_j`.
    pub fn apply_matrix(&self, m: &Matrix<Scalar>) -> Result<Poly> {
        if m.rows() != self.nvars || m.cols() != self.nvars {
            return Err(Error::Shape(format!(
                "substitution matrix must be {0}x{0}",
                self.nvars
            )));
        }
        if m.field() != self.field {
            return Err(Error::FieldMismatch(self.field, m.field()));
        }
        let images: Vec<Poly> = (0..self.nvars)
            .map(|i| Poly::linear_form(self.field, m.row(i)))
            .collect();
        self.compose(&images)
    }

    /// Adds `extra` unused variables at the end.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        Poly::from_sorted_unchecked(
            self.field,
            self.nvars + extra,
            self.terms
                .iter()
                .map(|(m, c)| (m.extend(extra), c.clone()))
                .collect(),
        )
    }

    /// Renames variables: `z_i` becomes `z_{map[i]}` in `nvars` variables.
    pub fn remap_vars(&self, map: &[usize], nvars: usize) -> Poly {
        Poly::from_terms(
            self.field,
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; nvars];
                for (i, &x) in m.exps().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::new(&e), c.clone())
            }),
        )
    }

    /// Exact division of polynomials; `None` when `rhs` does not divide
    /// `self` or either operand has negative exponents.
    pub fn div_exact(&self, rhs: &Poly) -> Option<Poly> {
        if rhs.is_zero() || !self.is_polynomial() || !rhs.is_polynomial() {
            return None;
        }
        let (lm, lc) = rhs.leading()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            if !m.dominates(lm) {
                return None;
            }
            let qm = m.div(lm);
            let qc = &c * &lc_inv;
            rem = &rem - &rhs.mul_term(&qm, &qc);
            quot.push((qm, qc));
        }
        Some(Poly::from_terms(self.field, self.nvars, quot))
    }

    pub fn map_coeffs(&self, field: Field, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        Poly::from_terms(
            field,
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Reinterprets rational coefficients in the Gaussian rationals.
    pub fn to_gaussian(&self) -> Result<Poly> {
        match self.field {
            Field::GaussianRationals => Ok(self.clone()),
            Field::Rationals => Ok(self.map_coeffs(Field::GaussianRationals, |c| {
                Scalar::from_rational(Field::GaussianRationals, &c.as_rational().unwrap()).unwrap()
            })),
            f => Err(Error::FieldMismatch(Field::GaussianRationals, f)),
        }
    }

    /// Clears denominators, returning integer (or Gaussian-integer) numerators
    /// scaled by the common denominator. Useful for content comparisons.
    pub fn common_denominator(&self) -> BigInt {
        use num_integer::Integer;
        let mut d = BigInt::from(1);
        for (_, c) in &self.terms {
            if let (Some(re), Some(im)) = (c.re(), c.im()) {
                d = d.lcm(re.denom()).lcm(im.denom());
            }
        }
        d
    }

    /// Sum of the coefficients' bit lengths, a rough size measure.
    pub fn bit_size(&self) -> u64 {
        self.terms
            .iter()
            .map(|(_, c)| match c {
                Scalar::Q(q) => q.numer().bits() + q.denom().bits(),
                Scalar::Qi(a, b) => a.numer().bits() + a.denom().bits() + b.numer().bits() + b.denom().bits(),
                Scalar::Fp { .. } => 32,
            })
            .sum()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("compatible polynomials")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("compatible polynomials")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("compatible polynomials")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_sorted_unchecked(
            self.field,
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl RingElem for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.field, self.nvars)
    }
    fn one_like(&self) -> Self {
        Poly::one(self.field, self.nvars)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_elem(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn sub_elem(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}; {}]({})", self.field, self.nvars, self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::format_poly(self))
    }
}

use super::poly::Poly;
use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};

/// Series in a formal parameter `t` with polynomial coefficients, truncated
/// modulo `t^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TSeries {
    field: Field,
    nvars: usize,
    coeffs: Vec<Poly>,
}

impl TSeries {
    pub fn zero(field: Field, nvars: usize, order: usize) -> TSeries {
        TSeries {
            field,
            nvars,
            coeffs: vec![Poly::zero(field, nvars); order],
        }
    }

    /// `p * t^0`.
    pub fn from_poly(p: &Poly, order: usize) -> TSeries {
        TSeries::monomial_t(p, 0, order)
    }

    /// `p * t^k`.
    pub fn monomial_t(p: &Poly, k: usize, order: usize) -> TSeries {
        let mut s = TSeries::zero(p.field(), p.nvars(), order);
        if k < order {
            s.coeffs[k] = p.clone();
        }
        s
    }

    pub fn from_coeffs(field: Field, nvars: usize, coeffs: Vec<Poly>) -> Result<TSeries> {
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            if c.nvars() != nvars {
                return Err(Error::NvarsMismatch(nvars, c.nvars()));
            }
        }
        Ok(TSeries { field, nvars, coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Coefficient of `t^k` (zero beyond the truncation order).
    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.field, self.nvars))
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    fn check(&self, rhs: &TSeries) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(Error::TruncationMismatch(self.order(), rhs.order()));
        }
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field, rhs.field));
        }
        if self.nvars != rhs.nvars {
            return Err(Error::NvarsMismatch(self.nvars, rhs.nvars));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &TSeries) -> Result<TSeries> {
        self.check(rhs)?;
        Ok(self.zip(rhs, |a, b| a + b))
    }

    pub fn sub(&self, rhs: &TSeries) -> Result<TSeries> {
        self.check(rhs)?;
        Ok(self.zip(rhs, |a, b| a - b))
    }

    fn zip(&self, rhs: &TSeries, f: impl Fn(&Poly, &Poly) -> Poly) -> TSeries {
        TSeries {
            field: self.field,
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> TSeries {
        TSeries {
            field: self.field,
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> TSeries {
        self.map(|p| p.scale(c))
    }

    pub fn mul(&self, rhs: &TSeries) -> Result<TSeries> {
        self.mul_capped(rhs, None)
    }

    /// Product modulo `t^order`, dropping z-degrees above `z_cap` when given.
    pub fn mul_capped(&self, rhs: &TSeries, z_cap: Option<i64>) -> Result<TSeries> {
        self.check(rhs)?;
        let n = self.order();
        let mut out = TSeries::zero(self.field, self.nvars, n);
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let mut prod = &self.coeffs[i] * &rhs.coeffs[j];
                if let Some(cap) = z_cap {
                    prod = prod.truncate_degree(cap);
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &prod;
            }
        }
        Ok(out)
    }

    /// `t^m -> t^{m+1}/(m+1)`; the top coefficient falls off the truncation.
    pub fn integrate_t(&self) -> TSeries {
        let n = self.order();
        let mut out = TSeries::zero(self.field, self.nvars, n);
        for m in 0..n.saturating_sub(1) {
            out.coeffs[m + 1] = self.coeffs[m].scale(&Scalar::ratio(self.field, 1, m as i64 + 1));
        }
        out
    }

    /// Formal `d/dt`; the result is exact modulo `t^{order-1}`.
    pub fn derivative_t(&self) -> TSeries {
        let n = self.order();
        let mut out = TSeries::zero(self.field, self.nvars, n);
        for m in 1..n {
            out.coeffs[m - 1] = self.coeffs[m].scale(&Scalar::from_i64(self.field, m as i64));
        }
        out
    }

    pub fn derivative_z(&self, i: usize) -> TSeries {
        self.map(|p| p.derivative(i))
    }

    pub fn truncate_z(&self, cap: i64) -> TSeries {
        self.map(|p| p.truncate_degree(cap))
    }

    /// Evaluates `p` at `z = g`, modulo `t^order`.
    pub fn compose(p: &Poly, g: &[TSeries]) -> Result<TSeries> {
        if g.len() != p.nvars() {
            return Err(Error::NvarsMismatch(p.nvars(), g.len()));
        }
        let first = g
            .first()
            .ok_or_else(|| Error::precondition("composition needs at least one variable"))?;
        let (order, nv) = (first.order(), first.nvars());
        let mut powers: Vec<Vec<TSeries>> = g
            .iter()
            .map(|gi| vec![TSeries::from_poly(&Poly::one(p.field(), nv), order), gi.clone()])
            .collect();
        let mut acc = TSeries::zero(p.field(), nv, order);
        for (m, c) in p.terms() {
            if !m.is_holomorphic() {
                return Err(Error::precondition("composition of a Laurent polynomial"));
            }
            let mut term = TSeries::from_poly(&Poly::constant(nv, c.clone()), order);
            for (i, &e) in m.exps().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&g[i])?;
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e])?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// `exp(self)` truncated at z-degree `z_cap`.
    ///
    /// The cap is mandatory because `exp` of a z-dependent series has
    /// unbounded z-degree. The `t^0` coefficient must have zero constant
    /// term, so that every summand raises the combined t/z order.
    pub fn exp(&self, z_cap: Option<i64>) -> Result<TSeries> {
        let cap = z_cap.ok_or_else(|| Error::precondition("exp needs a z-degree cap"))?;
        if !self.coeff(0).constant_term().is_zero() {
            return Err(Error::precondition(
                "exp of a series with nonzero constant term at t^0",
            ));
        }
        let one = Poly::one(self.field, self.nvars);
        let mut acc = TSeries::from_poly(&one, self.order());
        let mut power = acc.clone();
        let mut k = 1i64;
        loop {
            power = power.mul_capped(self, Some(cap))?;
            if power.is_zero() {
                return Ok(acc);
            }
            power = power.scale(&Scalar::ratio(self.field, 1, k));
            acc = acc.add(&power)?;
            k += 1;
        }
    }

    /// `exp(s * self)` graded by powers of `s`: entry `j` is `self^j / j!`,
    /// for `j <= n_s`, truncated at z-degree `z_cap`.
    pub fn exp_graded(&self, n_s: usize, z_cap: i64) -> Result<Vec<TSeries>> {
        let mut out = vec![TSeries::from_poly(
            &Poly::one(self.field, self.nvars),
            self.order(),
        )];
        for j in 1..=n_s {
            let next = out[j - 1]
                .mul_capped(self, Some(z_cap))?
                .scale(&Scalar::ratio(self.field, 1, j as i64));
            out.push(next);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    const Q: Field = Field::Rationals;

    fn p(s: &str) -> Poly {
        parse_poly(s, 1, Q, false).unwrap()
    }

    #[test]
    fn integrate_moves_up() {
        let s = TSeries::from_poly(&p("z1^2"), 3).integrate_t();
        assert!(s.coeff(0).is_zero());
        assert_eq!(s.coeff(1), p("z1^2"));
    }

    #[test]
    fn exp_of_zero_is_one() {
        let z = TSeries::zero(Q, 1, 4);
        assert_eq!(z.exp(Some(3)).unwrap(), TSeries::from_poly(&p("1"), 4));
        assert!(z.exp(None).is_err());
    }

    #[test]
    fn truncated_product() {
        let one = p("1");
        let a = TSeries::from_poly(&one, 2)
            .add(&TSeries::monomial_t(&one, 1, 2))
            .unwrap();
        let b = TSeries::from_poly(&one, 2)
            .sub(&TSeries::monomial_t(&one, 1, 2))
            .unwrap();
        assert_eq!(a.mul(&b).unwrap(), TSeries::from_poly(&one, 2));
        assert_eq!(
            a.mul(&TSeries::zero(Q, 1, 3)),
            Err(Error::TruncationMismatch(2, 3))
        );
    }

    #[test]
    fn exp_matches_series() {
        // exp(t z) = 1 + t z + t^2 z^2 / 2 mod t^3
        let a = TSeries::monomial_t(&p("z1"), 1, 3);
        let e = a.exp(Some(10)).unwrap();
        assert_eq!(e.coeff(2), p("1/2*z1^2"));
    }
}

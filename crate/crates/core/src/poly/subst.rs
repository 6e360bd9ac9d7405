use super::monomial::Monomial;
use super::poly::{LaurentPoly, Poly};
use crate::algebra::{Matrix, Scalar};
use crate::error::{Error, Result};

/// Which linear image of `z` to substitute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearMode {
    /// `P(U z)`.
    Direct,
    /// `P(U^{-1} z)`, the automorphism `Phi_U`.
    Inverse,
}

/// Evaluates `p` at `U z` or `U^{-1} z`. `U` must be invertible in either
/// mode so that degrees are preserved.
pub fn substitute_linear(p: &Poly, u: &Matrix<Scalar>, mode: LinearMode) -> Result<Poly> {
    let inv = u.inverse()?;
    match mode {
        LinearMode::Direct => p.apply_matrix(u),
        LinearMode::Inverse => p.apply_matrix(&inv),
    }
}

/// `Phi_U(P) = P(U^{-1} z)`.
pub fn phi(p: &Poly, u: &Matrix<Scalar>) -> Result<Poly> {
    substitute_linear(p, u, LinearMode::Inverse)
}

/// Adds a variable `z_{n+1}` making every term of total degree `deg P`.
pub fn homogenize(p: &Poly) -> Result<Poly> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if !p.is_polynomial() {
        return Err(Error::precondition("homogenize needs nonnegative exponents"));
    }
    let n = p.nvars();
    Ok(Poly::from_terms(
        p.field(),
        n + 1,
        p.terms().iter().map(|(m, c)| {
            let mut e = m.extend(1);
            e.exps_mut()[n] = (d - m.degree()) as i32;
            (e, c.clone())
        }),
    ))
}

/// Sets the last variable to 1 and drops it.
pub fn dehomogenize(p: &Poly) -> Result<Poly> {
    let n = p.nvars();
    if n == 0 {
        return Err(Error::precondition("dehomogenize needs at least one variable"));
    }
    Ok(Poly::from_terms(
        p.field(),
        n - 1,
        p.terms().iter().map(|(m, c)| (m.truncate(n - 1), c.clone())),
    ))
}

/// Sub-sum over componentwise nonnegative exponents.
pub fn holomorphic_part(f: &LaurentPoly) -> Poly {
    f.holomorphic_part()
}

/// Coefficient of `z^0`.
pub fn constant_term(f: &LaurentPoly) -> Scalar {
    f.constant_term()
}

/// `z^{-a}` as a Laurent monomial.
pub fn inverse_monomial(field: crate::algebra::Field, a: &[i32]) -> LaurentPoly {
    let neg: Vec<i32> = a.iter().map(|x| -x).collect();
    Poly::monomial(Monomial::new(&neg), Scalar::one(field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::poly::parse_poly;

    const Q: Field = Field::Rationals;

    #[test]
    fn swap_substitution() {
        let p = parse_poly("z1^2", 2, Q, false).unwrap();
        let u = Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(phi(&p, &u).unwrap(), parse_poly("z2^2", 2, Q, false).unwrap());
        let i = Matrix::identity(Q, 2);
        assert_eq!(phi(&p, &i).unwrap(), p);
        let s = Matrix::from_i64(Q, &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(phi(&p, &s), Err(Error::Singular));
    }

    #[test]
    fn homogenize_examples() {
        let p = parse_poly("z1^2 + z1", 1, Q, false).unwrap();
        let h = homogenize(&p).unwrap();
        assert_eq!(h, parse_poly("z1^2 + z1*z2", 2, Q, false).unwrap());
        assert_eq!(dehomogenize(&h).unwrap(), p);
        assert_eq!(homogenize(&Poly::zero(Q, 1)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn holomorphic_examples() {
        let f = parse_poly("x1 + x1^-1", 1, Q, true).unwrap();
        assert_eq!(holomorphic_part(&f), parse_poly("x1", 1, Q, false).unwrap());
        let g = parse_poly("x1*x2^-1", 2, Q, true).unwrap();
        assert!(holomorphic_part(&g).is_zero());
        let za = inverse_monomial(Q, &[2, 1]);
        let back = &za * &parse_poly("x1^2*x2", 2, Q, false).unwrap();
        assert!(back.is_one());
    }
}

use num_traits::Signed;

use super::monomial::Monomial;
use super::poly::Poly;
use crate::algebra::{fmt_rational, Scalar};

fn powprod(m: &Monomial, var: char) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("{var}{}", i + 1)),
            _ => parts.push(format!("{var}{}^{e}", i + 1)),
        }
    }
    parts.join("*")
}

/// Canonical text: descending graded-lex terms, e.g. `z1^2 + 2*z1*z2 - 1/2`.
/// Gaussian coefficients with a nonzero imaginary part print as `(a+bi)`.
pub fn format_poly(p: &Poly) -> String {
    format_poly_with(p, 'z')
}

/// As [`format_poly`] with a different variable letter (`x` for the
/// one-variable families of the Rodrigues module).
pub fn format_poly_with(p: &Poly, var: char) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let pp = powprod(m, var);
        let (negative, body) = match c.as_rational() {
            Some(q) => {
                let neg = q.is_negative();
                let a = q.abs();
                let body = if pp.is_empty() {
                    fmt_rational(&a)
                } else if a == num_rational::BigRational::from_integer(1.into()) {
                    pp.clone()
                } else {
                    format!("{}*{}", fmt_rational(&a), pp)
                };
                (neg, body)
            }
            None => {
                let coeff = match c {
                    Scalar::Qi(a, b) => {
                        let sign = if b.is_negative() { '-' } else { '+' };
                        format!("({}{}{}i)", fmt_rational(a), sign, fmt_rational(&b.abs()))
                    }
                    Scalar::Fp { v, .. } => v.to_string(),
                    Scalar::Q(_) => unreachable!(),
                };
                let body = if pp.is_empty() {
                    coeff
                } else {
                    format!("{coeff}*{pp}")
                };
                (false, body)
            }
        };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

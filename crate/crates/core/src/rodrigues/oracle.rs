//! Three-term recurrences, independent of the Rodrigues construction.

use crate::algebra::{Field, Scalar};
use crate::poly::Poly;

const Q: Field = Field::Rationals;

fn x() -> Poly {
    Poly::var(Q, 1, 0)
}

fn c(n: i64, d: i64) -> Scalar {
    Scalar::ratio(Q, n, d)
}

/// Runs `p_{k+1} = (a_k(x) p_k - b_k p_{k-1})` from seeds `p0, p1`.
fn run(p0: Poly, p1: Poly, upto: u32, step: impl Fn(u32, &Poly, &Poly) -> Poly) -> Vec<Poly> {
    let mut out = vec![p0, p1];
    for k in 1..upto {
        let next = step(k, &out[k as usize], &out[k as usize - 1]);
        out.push(next);
    }
    out.truncate(upto as usize + 1);
    out
}

/// `H_{m+1} = 2x H_m - 2m H_{m-1}`.
pub fn hermite(upto: u32) -> Vec<Poly> {
    run(Poly::one(Q, 1), x().scale(&c(2, 1)), upto, |m, h, hp| {
        &(&x() * h).scale(&c(2, 1)) - &hp.scale(&c(2 * m as i64, 1))
    })
}

/// `L_{m+1} = ((2m+1+alpha-x) L_m - (m+alpha) L_{m-1}) / (m+1)`.
pub fn laguerre(alpha: &Scalar, upto: u32) -> Vec<Poly> {
    let one = Poly::one(Q, 1);
    let l1 = &one.scale(&(alpha + &c(1, 1))) - &x();
    run(one.clone(), l1, upto, |m, l, lp| {
        let m = m as i64;
        let a = &one.scale(&(alpha + &c(2 * m + 1, 1))) - &x();
        (&(&a * l) - &lp.scale(&(alpha + &c(m, 1)))).scale(&c(1, m + 1))
    })
}

/// Gegenbauer polynomials normalized to `1` at `x = 1`:
/// `(2 lambda + m) R_{m+1} = 2 (m + lambda) x R_m - m R_{m-1}`. This form
/// stays valid at `lambda = 0`, where it is the Chebyshev recurrence.
pub fn gegenbauer(lambda: &Scalar, upto: u32) -> Vec<Poly> {
    run(Poly::one(Q, 1), x(), upto, |m, r, rp| {
        let lead = &(&x() * r).scale(&(&(lambda + &c(m as i64, 1)) * &c(2, 1)));
        let den = &(lambda * &c(2, 1)) + &c(m as i64, 1);
        (lead - &rp.scale(&c(m as i64, 1))).scale(&den.inv().expect("lambda > -1/2"))
    })
}

/// Chebyshev polynomials of the first kind.
pub fn chebyshev_t(upto: u32) -> Vec<Poly> {
    run(Poly::one(Q, 1), x(), upto, |_, t, tp| {
        &(&x() * t).scale(&c(2, 1)) - tp
    })
}

/// Chebyshev polynomials of the second kind.
pub fn chebyshev_u(upto: u32) -> Vec<Poly> {
    run(Poly::one(Q, 1), x().scale(&c(2, 1)), upto, |_, u, up| {
        &(&x() * u).scale(&c(2, 1)) - up
    })
}

/// `(m+1) P_{m+1} = (2m+1) x P_m - m P_{m-1}`.
pub fn legendre(upto: u32) -> Vec<Poly> {
    run(Poly::one(Q, 1), x(), upto, |m, p, pp| {
        let m = m as i64;
        (&(&x() * p).scale(&c(2 * m + 1, 1)) - &pp.scale(&c(m, 1))).scale(&c(1, m + 1))
    })
}

/// `Some(c)` with `a = c b`, for nonzero `b`.
pub fn proportional(a: &Poly, b: &Poly) -> Option<Scalar> {
    let (m, lead) = b.terms().first()?;
    let k = &a.coeff(m) / lead;
    (&b.scale(&k) == a && !k.is_zero()).then_some(k)
}

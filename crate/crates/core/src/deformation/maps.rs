use crate::algebra::Scalar;
use crate::diffops::{gradient, SymBilinearContext};
use crate::error::{Error, Result};
use crate::poly::{Poly, TSeries};

pub type SeriesMap = Vec<TSeries>;

pub(crate) fn require_deformable(ctx: &SymBilinearContext, p: &Poly) -> Result<()> {
    if !ctx.is_invertible() {
        return Err(Error::Singular);
    }
    ctx.delta().check_poly(p)?;
    if !p.is_polynomial() {
        return Err(Error::precondition("deformations need a polynomial"));
    }
    if p.order().is_some_and(|o| o < 2) {
        return Err(Error::precondition("deformations need o(P) >= 2"));
    }
    Ok(())
}

/// Multiplies by `t`, dropping what falls past the truncation.
pub(crate) fn shift_t(s: &TSeries) -> TSeries {
    let n = s.order();
    let mut c = vec![Poly::zero(s.field(), s.nvars())];
    c.extend(s.coeffs()[..n.saturating_sub(1)].iter().cloned());
    c.truncate(n);
    TSeries::from_coeffs(s.field(), s.nvars(), c).expect("same ring")
}

/// Divides by `t`; the `t^0` coefficient must vanish. The result is exact
/// modulo `t^{order-1}`.
pub(crate) fn unshift_t(s: &TSeries) -> Result<TSeries> {
    if !s.coeff(0).is_zero() {
        return Err(Error::precondition("series is not divisible by t"));
    }
    let mut c: Vec<Poly> = s.coeffs()[1..].to_vec();
    c.push(Poly::zero(s.field(), s.nvars()));
    TSeries::from_coeffs(s.field(), s.nvars(), c)
}

/// `A v` for a vector of series.
pub(crate) fn mat_apply(ctx: &SymBilinearContext, v: &[TSeries], inverse: bool) -> Result<SeriesMap> {
    let a = if inverse {
        ctx.inverse().ok_or(Error::Singular)?
    } else {
        ctx.matrix()
    };
    let n = v.len();
    (0..n)
        .map(|i| {
            let mut acc = TSeries::zero(v[0].field(), v[0].nvars(), v[0].order());
            for (j, vj) in v.iter().enumerate() {
                let c = a.get(i, j);
                if !c.is_zero() {
                    acc = acc.add(&vj.scale(c))?;
                }
            }
            Ok(acc)
        })
        .collect()
}

pub fn identity_map(ctx: &SymBilinearContext, n_t: usize) -> SeriesMap {
    let n = ctx.nvars();
    (0..n)
        .map(|i| TSeries::from_poly(&Poly::var(ctx.field(), n, i), n_t))
        .collect()
}

/// `F = z - t A grad P`.
pub fn forward_map(ctx: &SymBilinearContext, p: &Poly, n_t: usize) -> Result<SeriesMap> {
    require_deformable(ctx, p)?;
    let grad: Vec<TSeries> = gradient(p).iter().map(|g| TSeries::from_poly(g, n_t)).collect();
    let ag = mat_apply(ctx, &grad, false)?;
    identity_map(ctx, n_t)
        .iter()
        .zip(&ag)
        .map(|(z, g)| z.sub(&shift_t(g)))
        .collect()
}

/// Formal inverse of `F` by the fixed point `G = z + t A grad P(G)`; each
/// pass fixes one more power of `t`.
pub fn invert_map(ctx: &SymBilinearContext, p: &Poly, n_t: usize) -> Result<SeriesMap> {
    require_deformable(ctx, p)?;
    let z = identity_map(ctx, n_t);
    let grad = gradient(p);
    let mut g = z.clone();
    for _ in 1..n_t.max(1) {
        let at: Vec<TSeries> = grad
            .iter()
            .map(|d| TSeries::compose(d, &g))
            .collect::<Result<_>>()?;
        let ag = mat_apply(ctx, &at, false)?;
        g = z
            .iter()
            .zip(&ag)
            .map(|(zi, x)| zi.add(&shift_t(x)))
            .collect::<Result<_>>()?;
    }
    Ok(g)
}

/// `outer(inner(z))` modulo `t^order` for series maps.
pub fn compose_maps(outer: &[TSeries], inner: &[TSeries]) -> Result<SeriesMap> {
    outer
        .iter()
        .map(|o| {
            let mut acc = TSeries::zero(o.field(), o.nvars(), o.order());
            let mut tk = TSeries::from_poly(&Poly::one(o.field(), o.nvars()), o.order());
            for k in 0..o.order() {
                let c = o.coeff(k);
                if !c.is_zero() {
                    acc = acc.add(&TSeries::compose(&c, inner)?.mul(&tk)?)?;
                }
                tk = shift_t(&tk);
            }
            Ok(acc)
        })
        .collect()
}

/// `G - z = t A grad Q` modulo `t^order`.
pub fn check_gradient_form(ctx: &SymBilinearContext, g: &[TSeries], q: &TSeries) -> Result<bool> {
    let grad: Vec<TSeries> = (0..ctx.nvars()).map(|i| q.derivative_z(i)).collect();
    let ag = mat_apply(ctx, &grad, false)?;
    let z = identity_map(ctx, q.order());
    for i in 0..ctx.nvars() {
        if g[i].sub(&z[i])? != shift_t(&ag[i]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A^{-1}(G - z)/t` has vanishing curl `d_i H_j - d_j H_i`, modulo
/// `t^{order-1}`.
pub fn check_curl_free(ctx: &SymBilinearContext, g: &[TSeries]) -> Result<bool> {
    let z = identity_map(ctx, g[0].order());
    let diff: Vec<TSeries> = g
        .iter()
        .zip(&z)
        .map(|(a, b)| a.sub(b).and_then(|d| unshift_t(&d)))
        .collect::<Result<_>>()?;
    let h = mat_apply(ctx, &diff, true)?;
    let keep = g[0].order().saturating_sub(1);
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            let c = h[j].derivative_z(i).sub(&h[i].derivative_z(j))?;
            if c.coeffs()[..keep].iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_identity(m: &[TSeries], ctx: &SymBilinearContext) -> bool {
    m == identity_map(ctx, m[0].order()).as_slice()
}

pub(crate) fn half(ctx: &SymBilinearContext) -> Scalar {
    Scalar::ratio(ctx.field(), 1, 2)
}

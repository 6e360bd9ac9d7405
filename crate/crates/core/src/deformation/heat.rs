use serde::Serialize;

use super::maps::half;
use crate::algebra::Scalar;
use crate::diffops::SymBilinearContext;
use crate::error::{Error, Result};
use crate::poly::{format_poly, Poly, TSeries};

#[derive(Clone, Debug, Serialize)]
pub struct HeatReport {
    pub n_t: usize,
    pub n_z: i64,
    pub n_s: usize,
    /// `[s^j] (s dV/dt - 1/2 Delta_A V)` is zero for every `j <= n_s`.
    pub residual_zero: bool,
    /// First nonzero residual term as `(j, t-order, poly)`.
    pub first_residual: Option<(usize, usize, String)>,
    /// `V(0) = exp(s P)` holds termwise.
    pub initial_ok: bool,
    /// Set when no compared component was nonzero on either side.
    pub degenerate_caps: bool,
}

/// With `V = exp(s Q) = sum_j s^j V_j`, checks `d V_{j-1}/dt = 1/2 Delta_A V_j`
/// for `1 <= j <= n_s`, modulo `t^{n_t - 1}` and on z-degrees `<= n_z - 2`
/// (the part the z-degree cap leaves exact).
pub fn heat_check(
    ctx: &SymBilinearContext,
    p: &Poly,
    q: &TSeries,
    n_z: i64,
    n_s: usize,
) -> Result<HeatReport> {
    if n_z < 2 || n_s == 0 || q.order() < 2 {
        return Err(Error::precondition(
            "heat check needs n_z >= 2, n_s >= 1, n_t >= 2",
        ));
    }
    let n_t = q.order();
    let v = q.exp_graded(n_s, n_z)?;
    let h = half(ctx);
    let mut first_residual = None;
    let mut nontrivial = false;
    for j in 1..=n_s {
        let lhs = v[j - 1].derivative_t();
        for k in 0..n_t - 1 {
            let a = lhs.coeff(k).truncate_degree(n_z - 2);
            let b = ctx
                .delta()
                .apply(&v[j].coeff(k))?
                .scale(&h)
                .truncate_degree(n_z - 2);
            nontrivial |= !a.is_zero() || !b.is_zero();
            let r = &a - &b;
            if !r.is_zero() && first_residual.is_none() {
                first_residual = Some((j, k, format_poly(&r)));
            }
        }
    }
    let mut initial_ok = true;
    let mut pj = Poly::one(p.field(), p.nvars());
    let mut fact = Scalar::one(p.field());
    for (j, vj) in v.iter().enumerate() {
        if j > 0 {
            pj = (&pj * p).truncate_degree(n_z);
            fact = &fact * &Scalar::from_i64(p.field(), j as i64);
        }
        let expect = pj.scale(&fact.inv().expect("char 0"));
        initial_ok &= vj.coeff(0) == expect;
    }
    Ok(HeatReport {
        n_t,
        n_z,
        n_s,
        residual_zero: first_residual.is_none(),
        first_residual,
        initial_ok,
        degenerate_caps: !nontrivial,
    })
}

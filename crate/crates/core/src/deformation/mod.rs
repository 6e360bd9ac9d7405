//! Inverse maps `G` of `F = z - t A grad P`, the Cauchy problems for
//! `Q_{A,t}`, the heat-like check and the closed-formula probe.

mod cauchy;
mod heat;
mod maps;

use serde::Serialize;

pub use cauchy::{
    probe_closed_formula, solve_cauchy_gradient, solve_cauchy_laplace, solver_disagreement, ClosedFormRow,
    FitStatus,
};
pub use heat::{heat_check, HeatReport};
pub use maps::{
    check_curl_free, check_gradient_form, compose_maps, forward_map, identity_map, invert_map, is_identity,
    SeriesMap,
};

use crate::diffops::SymBilinearContext;
use crate::error::Result;
use crate::nilpotency::check_direct_ctx;
use crate::poly::{format_poly, Poly, TSeries};

#[derive(Clone, Debug)]
pub struct DeformationOptions {
    pub n_t: usize,
    pub n_z: i64,
    pub n_s: usize,
    pub k_max: usize,
    pub emit_polys: bool,
}

impl Default for DeformationOptions {
    fn default() -> Self {
        DeformationOptions {
            n_t: 6,
            n_z: 14,
            n_s: 3,
            k_max: 2,
            emit_polys: false,
        }
    }
}

/// Everything verified for one `(A, P)`.
#[derive(Clone, Debug, Serialize)]
pub struct DeformationReport {
    pub n_t: usize,
    pub nilpotent: bool,
    pub f_after_g_is_id: bool,
    pub g_after_f_is_id: bool,
    pub gradient_form: bool,
    pub curl_free: bool,
    /// For nilpotent `P`: the two Cauchy solvers agree.
    pub solvers_agree: Option<bool>,
    /// For other `P`: first `t`-order where they differ, if any.
    pub first_disagreement: Option<usize>,
    /// Each `[t^m] Q` is homogeneous of degree `(m+1)d - 2m`.
    pub grading_ok: Option<bool>,
    pub heat: Option<HeatReport>,
    pub closed_formula: Vec<ClosedFormRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<String>>,
}

impl DeformationReport {
    /// All exact identities that apply to this input hold.
    pub fn all_ok(&self) -> bool {
        self.f_after_g_is_id
            && self.g_after_f_is_id
            && self.gradient_form
            && self.curl_free
            && self.solvers_agree != Some(false)
            && self.grading_ok != Some(false)
            && self.heat.as_ref().is_none_or(|h| h.residual_zero && h.initial_ok)
    }
}

pub fn run_deformation(
    ctx: &SymBilinearContext,
    p: &Poly,
    opts: &DeformationOptions,
) -> Result<DeformationReport> {
    let n_t = opts.n_t;
    let f = forward_map(ctx, p, n_t)?;
    let g = invert_map(ctx, p, n_t)?;
    let q = solve_cauchy_gradient(ctx, p, n_t)?;
    let nilpotent = check_direct_ctx(ctx, p)?.is_nilpotent;
    let (solvers_agree, first_disagreement, heat, closed_formula) = if nilpotent {
        let ql = solve_cauchy_laplace(ctx, p, n_t)?;
        let heat = heat_check(ctx, p, &q, opts.n_z, opts.n_s)?;
        let rows = if p.is_homogeneous() {
            probe_closed_formula(ctx, p, &q, opts.k_max)?
        } else {
            Vec::new()
        };
        (Some(ql == q), None, Some(heat), rows)
    } else {
        (None, solver_disagreement(ctx, p, n_t)?, None, Vec::new())
    };
    Ok(DeformationReport {
        n_t,
        nilpotent,
        f_after_g_is_id: is_identity(&compose_maps(&f, &g)?, ctx),
        g_after_f_is_id: is_identity(&compose_maps(&g, &f)?, ctx),
        gradient_form: check_gradient_form(ctx, &g, &q)?,
        curl_free: check_curl_free(ctx, &g)?,
        solvers_agree,
        first_disagreement,
        grading_ok: grading(p, &q),
        heat,
        closed_formula,
        q: opts
            .emit_polys
            .then(|| q.coeffs().iter().map(format_poly).collect()),
    })
}

fn grading(p: &Poly, q: &TSeries) -> Option<bool> {
    if !p.is_homogeneous() || p.is_zero() {
        return None;
    }
    let d = p.degree()?;
    Some(q.coeffs().iter().enumerate().all(|(m, c)| {
        c.is_zero() || (c.is_homogeneous() && c.degree() == Some((m as i64 + 1) * d - 2 * m as i64))
    }))
}

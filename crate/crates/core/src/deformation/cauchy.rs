use serde::Serialize;

use super::maps::{half, require_deformable};
use crate::algebra::{Field, Scalar};
use crate::diffops::SymBilinearContext;
use crate::error::{Error, Result};
use crate::nilpotency::check_direct_ctx;
use crate::poly::{Poly, TSeries};

/// Picard iteration for `dQ/dt = 1/2 <grad Q, grad Q>_A`, `Q(0) = P`.
pub fn solve_cauchy_gradient(ctx: &SymBilinearContext, p: &Poly, n_t: usize) -> Result<TSeries> {
    require_deformable(ctx, p)?;
    let init = TSeries::from_poly(p, n_t);
    let h = half(ctx);
    let mut q = init.clone();
    for _ in 1..n_t.max(1) {
        let grad: Vec<TSeries> = (0..ctx.nvars()).map(|i| q.derivative_z(i)).collect();
        let mut rhs = TSeries::zero(ctx.field(), ctx.nvars(), n_t);
        let a = ctx.matrix();
        for i in 0..ctx.nvars() {
            for j in 0..ctx.nvars() {
                if !a.get(i, j).is_zero() {
                    rhs = rhs.add(&grad[i].mul(&grad[j])?.scale(a.get(i, j)))?;
                }
            }
        }
        q = init.add(&rhs.scale(&h).integrate_t())?;
    }
    Ok(q)
}

fn laplace_iteration(ctx: &SymBilinearContext, p: &Poly, n_t: usize) -> Result<TSeries> {
    let init = TSeries::from_poly(p, n_t);
    let quarter = Scalar::ratio(ctx.field(), 1, 4);
    let mut q = init.clone();
    for _ in 1..n_t.max(1) {
        let sq = q.mul(&q)?;
        let lap = TSeries::from_coeffs(
            ctx.field(),
            ctx.nvars(),
            sq.coeffs()
                .iter()
                .map(|c| ctx.delta().apply(c))
                .collect::<Result<_>>()?,
        )?;
        q = init.add(&lap.scale(&quarter).integrate_t())?;
    }
    Ok(q)
}

/// Picard iteration for `dQ/dt = 1/4 Delta_A Q^2`, `Q(0) = P`. Only defined
/// here for `Delta_A`-nilpotent `P`, where it describes the same `Q` as the
/// gradient problem.
pub fn solve_cauchy_laplace(ctx: &SymBilinearContext, p: &Poly, n_t: usize) -> Result<TSeries> {
    require_deformable(ctx, p)?;
    if !check_direct_ctx(ctx, p)?.is_nilpotent {
        return Err(Error::precondition(
            "Laplace form of the Cauchy problem needs nilpotent P",
        ));
    }
    laplace_iteration(ctx, p, n_t)
}

/// First `t`-order where the two Cauchy solvers differ, for any `P`.
pub fn solver_disagreement(ctx: &SymBilinearContext, p: &Poly, n_t: usize) -> Result<Option<usize>> {
    let a = solve_cauchy_gradient(ctx, p, n_t)?;
    let b = laplace_iteration(ctx, p, n_t)?;
    Ok((0..n_t).find(|&k| a.coeff(k) != b.coeff(k)))
}

/// One row of the closed-formula probe: the `t^m` coefficient of `Q^k`
/// compared with `Delta_A^m P^{m+k}`.
#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormRow {
    pub k: usize,
    pub m: usize,
    /// `c` with `[t^m] Q^k = c Delta_A^m P^{m+k}`; absent when no such `c`.
    pub fitted: Option<String>,
    pub status: FitStatus,
    /// `1/(2^m m! (m+k)!)`, the printed constant read at index `m`.
    pub printed: String,
    pub matches_printed: bool,
    /// `k!/(2^m m! (m+k)!)`.
    pub candidate: String,
    pub matches_candidate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitStatus {
    Fitted,
    BothZero,
    /// Basis element is zero but the target is not.
    Mismatch,
    NotProportional,
}

fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(Field::Rationals), |acc, k| {
        &acc * &Scalar::from_i64(Field::Rationals, k)
    })
}

fn constants(k: usize, m: usize) -> (Scalar, Scalar) {
    let den = &(&Scalar::from_i64(Field::Rationals, 2).pow(m as u64) * &factorial(m)) * &factorial(m + k);
    let printed = den.inv().expect("nonzero");
    let candidate = &factorial(k) * &printed;
    (printed, candidate)
}

/// Expresses each `[t^m] Q^k` in the basis `Delta_A^j P^{j+k}`; the degree
/// grading forces `j = m` for homogeneous `P` of degree other than 2.
pub fn probe_closed_formula(
    ctx: &SymBilinearContext,
    p: &Poly,
    q: &TSeries,
    k_max: usize,
) -> Result<Vec<ClosedFormRow>> {
    if !p.is_homogeneous() {
        return Err(Error::precondition("closed-formula probe needs homogeneous P"));
    }
    let mut rows = Vec::new();
    let mut qk = TSeries::from_poly(&Poly::one(p.field(), p.nvars()), q.order());
    for k in 1..=k_max {
        qk = qk.mul(q)?;
        for m in 0..q.order() {
            let target = qk.coeff(m);
            let basis = ctx.delta().apply_pow(&p.pow((m + k) as u32), m as u32)?;
            let (status, fitted) = fit(&target, &basis);
            let (printed, candidate) = constants(k, m);
            let as_field = |s: &Scalar| Scalar::from_rational(p.field(), &s.as_rational().unwrap());
            rows.push(ClosedFormRow {
                k,
                m,
                fitted: fitted.as_ref().map(Scalar::to_plain_string),
                status,
                matches_printed: fitted.is_some() && fitted == as_field(&printed),
                printed: printed.to_plain_string(),
                matches_candidate: fitted.is_some() && fitted == as_field(&candidate),
                candidate: candidate.to_plain_string(),
            });
        }
    }
    Ok(rows)
}

fn fit(target: &Poly, basis: &Poly) -> (FitStatus, Option<Scalar>) {
    match (target.is_zero(), basis.is_zero()) {
        (true, true) => (FitStatus::BothZero, None),
        (false, true) => (FitStatus::Mismatch, None),
        (true, false) => (FitStatus::Fitted, Some(Scalar::zero(target.field()))),
        (false, false) => {
            let (m, b) = &basis.terms()[0];
            let c = &target.coeff(m) / b;
            if &basis.scale(&c) == target {
                (FitStatus::Fitted, Some(c))
            } else {
                (FitStatus::NotProportional, None)
            }
        }
    }
}

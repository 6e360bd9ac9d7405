use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::frame::IsotropicFrame;
use crate::algebra::{Matrix, Scalar};
use crate::diffops::{constant_matrix, hessian, DiffOp, SymBilinearContext};
use crate::error::{Error, Result};
use crate::poly::{format_poly, Poly};
use crate::sample;

/// Which criterion produced a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Method {
    /// `Lambda^m P^m` computed for `m = 1..=bound`.
    Direct,
    /// `P = 0` or `deg P <= 1`: nilpotent for every constant-coefficient
    /// operator without terms of order below 2.
    Degenerate,
    /// Nilpotency of the polynomial matrix `A Hes(P)`.
    HessianFullRank,
    /// Nilpotency of `A B` for `P = z^T B z`.
    Quadratic,
    /// Nilpotency of the leading `r x r` block of `U^T B U`.
    QuadraticSubmatrix,
    /// Nilpotency of `Omega_{P;j}` built from an isotropic frame.
    Omega { j: u32 },
    /// Every sampled `beta_D^{d-2} P` passed the quadratic test.
    Directional,
}

/// Witness of a failed direct check: the smallest `m` with `Lambda^m P^m != 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub m: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NilpotencyVerdict {
    pub is_nilpotent: bool,
    pub method: Method,
    /// Present only for a negative direct verdict.
    pub witness: Option<Witness>,
    pub bound: usize,
    /// False when the verdict only covers `m <= bound` with no theorem
    /// making the bound sufficient.
    pub conclusive: bool,
}

impl NilpotencyVerdict {
    fn matrix(method: Method, is_nilpotent: bool, bound: usize) -> Self {
        NilpotencyVerdict {
            is_nilpotent,
            method,
            witness: None,
            bound,
            conclusive: true,
        }
    }
}

/// Matrix `A` with `Lambda = Delta_A`, when `Lambda` is a homogeneous
/// second-order constant-coefficient operator.
pub fn as_laplace_matrix(op: &DiffOp) -> Option<Matrix<Scalar>> {
    if !op.is_constant_coeff() || op.order() != Some(2) || op.min_order() != Some(2) {
        return None;
    }
    let f = op.field();
    if f.characteristic() == 2 {
        return None;
    }
    let n = op.nvars();
    let half = Scalar::ratio(f, 1, 2);
    let mut a = Matrix::zeros(f, n, n);
    for (m, c) in op.terms() {
        let c = c.constant_term();
        let idx: Vec<usize> = (0..n).filter(|&i| m.get(i) > 0).collect();
        match idx.as_slice() {
            [i] => a.set(*i, *i, c),
            [i, j] => {
                let v = &c * &half;
                a.set(*i, *j, v.clone());
                a.set(*j, *i, v);
            }
            _ => return None,
        }
    }
    Some(a)
}

fn is_degenerate(op: &DiffOp, p: &Poly) -> bool {
    op.is_constant_coeff()
        && op.min_order().is_none_or(|o| o >= 2)
        && p.degree().is_none_or(|d| d <= 1)
        && p.is_polynomial()
}

/// Computes `Lambda^m P^m` for `m = 1..=bound` and reports the first nonzero
/// value. For `Lambda = Delta_A` with `bound >= rank A` and `o(P) >= 2` the
/// verdict is conclusive; otherwise it only covers the window.
pub fn check_direct(op: &DiffOp, p: &Poly, bound: usize) -> Result<NilpotencyVerdict> {
    if bound == 0 {
        return Err(Error::precondition("bound must be at least 1"));
    }
    op.check_poly(p)?;
    if is_degenerate(op, p) {
        return Ok(NilpotencyVerdict {
            is_nilpotent: true,
            method: Method::Degenerate,
            witness: None,
            bound,
            conclusive: true,
        });
    }
    let conclusive =
        as_laplace_matrix(op).is_some_and(|a| bound >= a.rank() && p.order().is_some_and(|o| o >= 2));
    let mut power = Poly::one(p.field(), p.nvars());
    for m in 1..=bound {
        power = &power * p;
        let v = op.apply_pow(&power, m as u32)?;
        if !v.is_zero() {
            return Ok(NilpotencyVerdict {
                is_nilpotent: false,
                method: Method::Direct,
                witness: Some(Witness {
                    m,
                    value: format_poly(&v),
                }),
                bound,
                conclusive: true,
            });
        }
    }
    Ok(NilpotencyVerdict {
        is_nilpotent: true,
        method: Method::Direct,
        witness: None,
        bound,
        conclusive,
    })
}

/// `check_direct` with `Lambda = Delta_A` and the bound `rank A`.
pub fn check_direct_ctx(ctx: &SymBilinearContext, p: &Poly) -> Result<NilpotencyVerdict> {
    check_direct(ctx.delta(), p, ctx.rank().max(1))
}

fn require_order_two(p: &Poly) -> Result<()> {
    match (p.degree(), p.order()) {
        (Some(d), Some(o)) if d >= 2 && o < 2 => Err(Error::precondition(
            "matrix criteria need o(P) >= 2 (no constant or linear terms)",
        )),
        _ => Ok(()),
    }
}

/// Nilpotency of `A Hes(P)` for invertible `A`; equivalent to nilpotency of
/// `U^T Hes(P) U` whenever `A = U U^T`, without needing `U`.
pub fn check_hessian_fullrank(ctx: &SymBilinearContext, p: &Poly) -> Result<NilpotencyVerdict> {
    if !ctx.is_invertible() {
        return Err(Error::Unsupported(format!(
            "Hessian criterion needs full rank, got rank {} of {}",
            ctx.rank(),
            ctx.nvars()
        )));
    }
    ctx.delta().check_poly(p)?;
    require_order_two(p)?;
    let a = constant_matrix(ctx.matrix(), p.nvars());
    let m = a.mul(&hessian(p))?;
    Ok(NilpotencyVerdict::matrix(
        Method::HessianFullRank,
        m.is_nilpotent()?,
        ctx.nvars(),
    ))
}

/// Quadratic form `z^T B z`.
pub fn quadratic_form(b: &Matrix<Scalar>) -> Poly {
    let n = b.rows();
    let f = b.field();
    let z: Vec<Poly> = (0..n).map(|i| Poly::var(f, n, i)).collect();
    let mut acc = Poly::zero(f, n);
    for i in 0..n {
        for j in 0..n {
            if !b.get(i, j).is_zero() {
                acc = &acc + &(&z[i] * &z[j]).scale(b.get(i, j));
            }
        }
    }
    acc
}

/// Symmetric `B` with `P = z^T B z`, for homogeneous quadratic `P`.
pub fn quadratic_matrix(p: &Poly) -> Result<Matrix<Scalar>> {
    if !(p.is_zero() || (p.is_homogeneous() && p.degree() == Some(2))) {
        return Err(Error::precondition("expected a homogeneous quadratic"));
    }
    let half = Scalar::ratio(p.field(), 1, 2);
    let h = hessian(p);
    let n = p.nvars();
    let mut b = Matrix::zeros(p.field(), n, n);
    for i in 0..n {
        for j in 0..n {
            b.set(i, j, &h.get(i, j).constant_term() * &half);
        }
    }
    Ok(b)
}

/// Quadratic criterion for `P = z^T B z`: `A B` nilpotent when `A` is
/// invertible, else the leading `r x r` block of `U^T B U` for a normalized
/// factor `A = U diag(I_r, 0) U^T`.
pub fn check_quadratic(ctx: &SymBilinearContext, b: &Matrix<Scalar>) -> Result<NilpotencyVerdict> {
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if b.rows() != ctx.nvars() {
        return Err(Error::Shape("B must match the context size".into()));
    }
    if ctx.is_invertible() {
        let ab = ctx.matrix().mul(b)?;
        return Ok(NilpotencyVerdict::matrix(
            Method::Quadratic,
            ab.is_nilpotent()?,
            ctx.nvars(),
        ));
    }
    let u = ctx
        .normalized_factor()
        .ok_or_else(|| Error::Unsupported("rank-deficient context without a normalized factor".into()))?;
    let r = ctx.rank();
    let full = u.transpose().mul(b)?.mul(u)?;
    let mut sub = Matrix::zeros(b.field(), r, r);
    for i in 0..r {
        for j in 0..r {
            sub.set(i, j, full.get(i, j).clone());
        }
    }
    Ok(NilpotencyVerdict::matrix(
        Method::QuadraticSubmatrix,
        sub.is_nilpotent()?,
        r,
    ))
}

/// Frame criterion: nilpotency of `Omega_{P;j}` (`j = 0` when `None`).
pub fn check_omega(frame: &IsotropicFrame, j: Option<u32>) -> Result<NilpotencyVerdict> {
    let j = j.unwrap_or(0);
    let m = frame.omega(j)?;
    Ok(NilpotencyVerdict::matrix(
        Method::Omega { j },
        m.is_nilpotent()?,
        frame.len(),
    ))
}

/// One sampled direction and its quadratic verdict.
#[derive(Clone, Debug, Serialize)]
pub struct DirectionalSample {
    pub beta: Vec<String>,
    pub reduced: String,
    pub is_nilpotent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectionalReport {
    pub samples: Vec<DirectionalSample>,
    /// First sample whose reduction is not nilpotent; such a sample proves
    /// that `P` is not `Delta_A`-nilpotent.
    pub violation: Option<usize>,
    pub verdict: NilpotencyVerdict,
}

/// Refuter: checks `beta_D^{d-2} P` with the quadratic criterion for the
/// basis vectors and `samples` random directions. Passing is evidence, not
/// proof, of nilpotency.
pub fn check_directional(
    ctx: &SymBilinearContext,
    p: &Poly,
    samples: usize,
    seed: u64,
) -> Result<DirectionalReport> {
    if !ctx.is_invertible() {
        return Err(Error::Unsupported("directional criterion needs full rank".into()));
    }
    ctx.delta().check_poly(p)?;
    if !p.is_homogeneous() || p.is_zero() {
        return Err(Error::precondition("directional criterion needs homogeneous P"));
    }
    let d = p.degree().unwrap();
    if d < 2 {
        return Err(Error::precondition("directional criterion needs degree >= 2"));
    }
    let n = ctx.nvars();
    let f = ctx.field();
    let mut betas: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|k| Scalar::from_i64(f, (k == i) as i64)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        betas.push(sample::vector(&mut rng, f, n, 3));
    }
    let mut out = Vec::with_capacity(betas.len());
    let mut violation = None;
    for (k, beta) in betas.iter().enumerate() {
        let op = DiffOp::directional(f, beta, (d - 2) as u32);
        let q = op.apply(p)?;
        let b = quadratic_matrix(&q)?;
        let v = check_quadratic(ctx, &b)?;
        if !v.is_nilpotent && violation.is_none() {
            violation = Some(k);
        }
        out.push(DirectionalSample {
            beta: beta.iter().map(Scalar::to_plain_string).collect(),
            reduced: format_poly(&q),
            is_nilpotent: v.is_nilpotent,
        });
    }
    let bound = out.len();
    Ok(DirectionalReport {
        samples: out,
        violation,
        verdict: NilpotencyVerdict {
            is_nilpotent: violation.is_none(),
            method: Method::Directional,
            witness: None,
            bound,
            conclusive: violation.is_some(),
        },
    })
}

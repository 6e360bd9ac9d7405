use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Matrix, Scalar};
use crate::diffops::SymBilinearContext;
use crate::error::{Error, Result};
use crate::nilpotency::{check_direct_ctx, check_omega, IsotropicFrame, NilpotencyVerdict};
use crate::poly::Poly;
use crate::sample;

/// How the isotropic frame of a generated example is laid out.
///
/// A Gram matrix is symmetric, so a strictly triangular `Xi` is already zero;
/// the non-orthogonal nilpotent case is covered by `Tangent` instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameShape {
    /// All vectors in one totally isotropic subspace: `Xi = 0`.
    Orthogonal,
    /// `P = c0 h_u^d + c1 d h_u^{d-1} h_w` with `u` isotropic, `u _|_ w`,
    /// `<w, w> != 0`, written as a frame through nodes on the isotropic curve
    /// `u + e w - e^2 <w,w>/2 v`. `Xi` is nonzero but `Omega` is nilpotent.
    Tangent,
    /// Independent random isotropic vectors, retried until `Omega` is
    /// nilpotent.
    RandomRetry,
}

#[derive(Clone, Debug)]
pub struct HnExample {
    pub p: Poly,
    pub frame: IsotropicFrame,
    pub verdict: NilpotencyVerdict,
    pub shape: FrameShape,
    pub seed: u64,
    pub attempts: usize,
}

const RETRY_BUDGET: usize = 400;

/// Builds a `Delta_A`-nilpotent homogeneous polynomial of degree `d` from an
/// isotropic frame of `k` vectors (`Tangent` uses `2d + 1` nodes and ignores
/// `k`). Every result is confirmed by `check_direct` before it is returned.
pub fn generate_hn(
    ctx: &SymBilinearContext,
    d: u32,
    k: usize,
    shape: FrameShape,
    seed: u64,
) -> Result<HnExample> {
    if ctx.field() != Field::GaussianRationals {
        return Err(Error::Unsupported("HN generation works over Qi".into()));
    }
    if ctx.nvars() < 2 || d < 2 || k == 0 {
        return Err(Error::precondition("need n >= 2, d >= 2 and k >= 1"));
    }
    let u = ctx.normalized_factor().ok_or_else(|| {
        Error::Unsupported("context has no normalized factor A = U diag(I_r, 0) U^T".into())
    })?;
    // alpha = T beta maps standard-form isotropic vectors to A-isotropic ones
    let t = u.inverse()?.transpose();
    let r = ctx.rank();
    if shape == FrameShape::Tangent && r < 3 {
        return Err(Error::Unsupported("tangent frames need rank at least 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=RETRY_BUDGET {
        let (betas, coeffs) = match shape {
            FrameShape::Orthogonal => orthogonal(&mut rng, ctx.nvars(), r, k),
            FrameShape::Tangent => tangent(&mut rng, ctx.nvars(), r, d),
            FrameShape::RandomRetry => {
                let v: Vec<_> = (0..k)
                    .map(|_| random_isotropic(&mut rng, ctx.nvars(), r, 1))
                    .collect();
                let c = (0..k).map(|_| sample::nonzero_scalar(&mut rng, QI, 2)).collect();
                (v, c)
            }
        };
        if betas.iter().any(|b| b.iter().all(Scalar::is_zero)) {
            continue;
        }
        let alphas = betas.iter().map(|b| t.mul_vec(b)).collect::<Result<Vec<_>>>()?;
        let frame = IsotropicFrame::new(ctx.clone(), d, alphas, coeffs)?;
        if shape == FrameShape::RandomRetry && !check_omega(&frame, None)?.is_nilpotent {
            continue;
        }
        let p = frame.assemble();
        if p.is_zero() {
            continue;
        }
        let verdict = check_direct_ctx(ctx, &p)?;
        if !verdict.is_nilpotent {
            return Err(Error::precondition(format!(
                "generated frame polynomial failed the direct check (seed {seed})"
            )));
        }
        return Ok(HnExample {
            p,
            frame,
            verdict,
            shape,
            seed,
            attempts: attempt,
        });
    }
    Err(Error::RetryBudget(RETRY_BUDGET))
}

const QI: Field = Field::GaussianRationals;

fn int(v: i64) -> Scalar {
    Scalar::gaussian_int(v, 0)
}

/// Random isotropic vector for `diag(I_r, 0)`: with `s = sum_{j>2} y_j^2`,
/// `x1 = (p - s/p)/2` and `x2 = (p + s/p)/(2i)` give `x1^2 + x2^2 = -s`.
fn random_isotropic<R: Rng>(rng: &mut R, n: usize, r: usize, bound: i64) -> Vec<Scalar> {
    let mut v: Vec<Scalar> = (0..n).map(|_| sample::scalar(rng, QI, bound)).collect();
    match r {
        0 => {}
        1 => v[0] = Scalar::zero(QI),
        _ => {
            let s = v[2..r].iter().fold(Scalar::zero(QI), |acc, y| &acc + &(y * y));
            let p = sample::nonzero_scalar(rng, QI, bound);
            let q = &s / &p;
            let two = int(2);
            v[0] = &(&p - &q) / &two;
            v[1] = &(&p + &q) / &(&two * &Scalar::imag_unit());
        }
    }
    v
}

/// Random orthogonal matrix on the first `r` coordinates (identity on the
/// rest) by the Cayley transform `(I - S)(I + S)^{-1}` of a skew `S`.
fn cayley<R: Rng>(rng: &mut R, n: usize, r: usize) -> Matrix<Scalar> {
    loop {
        let mut s = Matrix::zeros(QI, n, n);
        for i in 0..r {
            for j in i + 1..r {
                let x = sample::scalar(rng, QI, 1);
                s.set(j, i, -&x);
                s.set(i, j, x);
            }
        }
        let id = Matrix::identity(QI, n);
        if let Ok(inv) = id.add(&s).expect("square").inverse() {
            return id.sub(&s).expect("square").mul(&inv).expect("square");
        }
    }
}

fn orthogonal<R: Rng>(rng: &mut R, n: usize, r: usize, k: usize) -> (Vec<Vec<Scalar>>, Vec<Scalar>) {
    let o = cayley(rng, n, r);
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for j in 0..r / 2 {
        let mut v = vec![Scalar::zero(QI); n];
        v[2 * j] = int(1);
        v[2 * j + 1] = Scalar::imag_unit();
        basis.push(o.mul_vec(&v).expect("length n"));
    }
    for j in r..n {
        let mut v = vec![Scalar::zero(QI); n];
        v[j] = int(1);
        basis.push(v);
    }
    let vectors = (0..k)
        .map(|_| {
            basis.iter().fold(vec![Scalar::zero(QI); n], |acc, b| {
                let c = sample::scalar(rng, QI, 2);
                acc.iter().zip(b).map(|(x, y)| x + &(&c * y)).collect()
            })
        })
        .collect();
    let coeffs = (0..k).map(|_| sample::nonzero_scalar(rng, QI, 2)).collect();
    (vectors, coeffs)
}

fn tangent<R: Rng>(rng: &mut R, n: usize, r: usize, d: u32) -> (Vec<Vec<Scalar>>, Vec<Scalar>) {
    let o = cayley(rng, n, r);
    let i = Scalar::imag_unit();
    let half = Scalar::ratio(QI, 1, 2);
    let mut u = vec![Scalar::zero(QI); n];
    let mut v = vec![Scalar::zero(QI); n];
    let mut w = vec![Scalar::zero(QI); n];
    u[0] = int(1);
    u[1] = i.clone();
    v[0] = half.clone();
    v[1] = -&(&i * &half);
    let lambda = sample::nonzero_scalar(rng, QI, 2);
    w[2] = lambda.clone();
    for x in w.iter_mut().skip(r) {
        *x = sample::scalar(rng, QI, 1);
    }
    let g = &lambda * &lambda;
    let (u, v, w) = (
        o.mul_vec(&u).expect("length n"),
        o.mul_vec(&v).expect("length n"),
        o.mul_vec(&w).expect("length n"),
    );
    let nodes: Vec<Scalar> = (0..=2 * d as i64).map(int).collect();
    let c0 = sample::scalar(rng, QI, 2);
    let c1 = sample::nonzero_scalar(rng, QI, 2);
    let mut vectors = Vec::new();
    let mut coeffs = Vec::new();
    for (idx, e) in nodes.iter().enumerate() {
        let quad = &(&(e * e) * &g) * &half;
        let alpha: Vec<Scalar> = (0..n)
            .map(|j| &(&u[j] + &(e * &w[j])) - &(&quad * &v[j]))
            .collect();
        let mut c = &c1 * &lagrange_slope(&nodes, idx);
        if idx == 0 {
            c = &c + &c0;
        }
        if !c.is_zero() {
            vectors.push(alpha);
            coeffs.push(c);
        }
    }
    (vectors, coeffs)
}

/// `l_i'(0)` for the Lagrange basis polynomial of node `i`.
fn lagrange_slope(nodes: &[Scalar], i: usize) -> Scalar {
    let x = Poly::var(QI, 1, 0);
    let mut l = Poly::one(QI, 1);
    for (j, e) in nodes.iter().enumerate() {
        if j != i {
            let denom = (&nodes[i] - e).inv().expect("distinct nodes");
            l = &l * &(&x - &Poly::constant(1, e.clone())).scale(&denom);
        }
    }
    l.derivative(0).constant_term()
}

//! The bilinear forms `{f, g}_A = f(AD) g` and `(f, g)_A = {f, g}_A(0)`,
//! and the isotropy identities they satisfy on nilpotent polynomials.

use std::sync::RwLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::algebra::{Matrix, Scalar};
use crate::diffops::{gradient, DiffOp, SymBilinearContext};
use crate::error::{Error, Result};
use crate::nilpotency::check_direct_ctx;
use crate::poly::{monomials_of_degree, Poly};
use crate::sample;

/// A context with invertible `A` and a cache of the operators `f(AD)`.
pub struct BilinearFormContext {
    ctx: SymBilinearContext,
    cache: RwLock<FxHashMap<Poly, DiffOp>>,
}

impl BilinearFormContext {
    pub fn new(ctx: SymBilinearContext) -> Result<Self> {
        if !ctx.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(BilinearFormContext {
            ctx,
            cache: RwLock::new(FxHashMap::default()),
        })
    }

    pub fn ctx(&self) -> &SymBilinearContext {
        &self.ctx
    }

    pub fn operator(&self, f: &Poly) -> Result<DiffOp> {
        if let Some(op) = self.cache.read().expect("cache lock").get(f) {
            return Ok(op.clone());
        }
        let op = self.ctx.f_of_ad(f)?;
        self.cache
            .write()
            .expect("cache lock")
            .insert(f.clone(), op.clone());
        Ok(op)
    }

    /// `{f, g}_A = f(AD) g`.
    pub fn apply(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.ctx.delta().check_poly(f)?;
        self.ctx.delta().check_poly(g)?;
        self.operator(f)?.apply(g)
    }

    /// `(f, g)_A`.
    pub fn eval(&self, f: &Poly, g: &Poly) -> Result<Scalar> {
        Ok(self.apply(f, g)?.constant_term())
    }

    /// Gram matrix of `(., .)_A` on the degree-`e` monomials.
    pub fn gram(&self, e: u32) -> Result<Matrix<Scalar>> {
        let n = self.ctx.nvars();
        let f = self.ctx.field();
        let monos: Vec<Poly> = monomials_of_degree(n, e)
            .into_iter()
            .map(|m| Poly::monomial(m, Scalar::one(f)))
            .collect();
        let mut g = Matrix::zeros(f, monos.len(), monos.len());
        for (i, a) in monos.iter().enumerate() {
            for (j, b) in monos.iter().enumerate() {
                g.set(i, j, self.eval(a, b)?);
            }
        }
        Ok(g)
    }

    pub fn is_nondegenerate(&self, e: u32) -> Result<bool> {
        let g = self.gram(e)?;
        Ok(g.rank() == g.rows())
    }
}

pub fn bform_apply(fc: &BilinearFormContext, f: &Poly, g: &Poly) -> Result<Poly> {
    fc.apply(f, g)
}

pub fn bform_eval(fc: &BilinearFormContext, f: &Poly, g: &Poly) -> Result<Scalar> {
    fc.eval(f, g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropyRow {
    pub m: u32,
    #[serde(rename = "generator-id")]
    pub generator_id: String,
    pub vanished: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotropyReport {
    pub m_max: u32,
    pub rows: Vec<IsotropyRow>,
    pub violations: Vec<IsotropyRow>,
}

impl IsotropyReport {
    pub fn all_vanished(&self) -> bool {
        self.violations.is_empty()
    }
}

const RANDOM_MULTIPLES: usize = 3;

/// Applies every generator `sigma_{A^{-1}}`, `dP/dz_i` and a seeded sample
/// of multiples `h f` to `Delta_A^m P^{m+1}`, and evaluates the
/// self-pairing of `Delta_A^m P^{m+1}`, for `m <= m_max`.
pub fn isotropy_suite(fc: &BilinearFormContext, p: &Poly, m_max: u32, seed: u64) -> Result<IsotropyReport> {
    require_nilpotent_homogeneous(fc, p)?;
    if p.degree().unwrap_or(0) < 3 {
        return Err(Error::precondition("isotropy suite needs deg P >= 3"));
    }
    let sigma = fc.ctx.sigma().expect("invertible").clone();
    let mut gens = vec![("sigma".to_string(), sigma)];
    for (i, d) in gradient(p).into_iter().enumerate() {
        if !d.is_zero() {
            gens.push((format!("dP/dz{}", i + 1), d));
        }
    }
    add_multiples(fc, &mut gens, seed);
    run_suite(fc, p, m_max, &gens)
}

/// The suite for quadratic `P`, with generators `P` and `sigma_{A^{-1}}`.
pub fn quadratic_isotropy(
    fc: &BilinearFormContext,
    p: &Poly,
    m_max: u32,
    seed: u64,
) -> Result<IsotropyReport> {
    require_nilpotent_homogeneous(fc, p)?;
    if p.degree() != Some(2) {
        return Err(Error::precondition("quadratic isotropy needs deg P = 2"));
    }
    let sigma = fc.ctx.sigma().expect("invertible").clone();
    let mut gens = vec![("P".to_string(), p.clone()), ("sigma".to_string(), sigma)];
    add_multiples(fc, &mut gens, seed);
    run_suite(fc, p, m_max, &gens)
}

fn require_nilpotent_homogeneous(fc: &BilinearFormContext, p: &Poly) -> Result<()> {
    fc.ctx.delta().check_poly(p)?;
    if p.is_zero() || !p.is_homogeneous() || !p.is_polynomial() {
        return Err(Error::precondition("P must be a nonzero homogeneous polynomial"));
    }
    if !check_direct_ctx(&fc.ctx, p)?.is_nilpotent {
        return Err(Error::precondition("P is not Delta_A-nilpotent"));
    }
    Ok(())
}

fn add_multiples(fc: &BilinearFormContext, gens: &mut Vec<(String, Poly)>, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = gens.clone();
    for (id, f) in &base {
        for k in 0..RANDOM_MULTIPLES {
            let h = sample::poly(&mut rng, fc.ctx.field(), fc.ctx.nvars(), 0, 2, 3, 3);
            if !h.is_zero() {
                gens.push((format!("h{k}*{id}"), &h * f));
            }
        }
    }
}

fn run_suite(
    fc: &BilinearFormContext,
    p: &Poly,
    m_max: u32,
    gens: &[(String, Poly)],
) -> Result<IsotropyReport> {
    let delta = fc.ctx.delta();
    let targets: Vec<Poly> = (0..=m_max)
        .into_par_iter()
        .map(|m| delta.apply_pow(&p.pow(m + 1), m))
        .collect::<Result<_>>()?;
    let jobs: Vec<(u32, Option<usize>)> = (0..=m_max)
        .flat_map(|m| (0..gens.len()).map(move |g| (m, Some(g))).chain([(m, None)]))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(m, g)| {
            let x = &targets[m as usize];
            let (id, vanished) = match g {
                Some(g) => (gens[g].0.clone(), fc.apply(&gens[g].1, x)?.is_zero()),
                None => ("self".to_string(), fc.eval(x, x)?.is_zero()),
            };
            Ok(IsotropyRow {
                m,
                generator_id: id,
                vanished,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = rows.iter().filter(|r| !r.vanished).cloned().collect();
    Ok(IsotropyReport {
        m_max,
        rows,
        violations,
    })
}

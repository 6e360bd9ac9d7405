use crate::algebra::{Matrix, Scalar};
use crate::diffops::DiffOp;
use crate::error::{Error, Result};
use crate::poly::{phi, Monomial, Poly};

/// Change of coordinates that exposes the essential variables of a set of
/// polynomials.
///
/// With `L = {xi : xi . grad P = 0 for every P}` and `W = [complement | L]`,
/// `U = W^{-1}` makes every `Phi_U(P) = P(W z)` a function of the first `k`
/// variables. A constant-coefficient operator conjugated by `U` then acts on
/// such functions through its terms in the first `k` derivatives only.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub u: Matrix<Scalar>,
    pub k: usize,
    pub op: DiffOp,
    pub polys: Vec<Poly>,
}

/// Returns `None` when every variable is essential, none is, the operator has
/// polynomial coefficients, or the characteristic is positive (where a zero
/// gradient does not force independence, e.g. `z1^p`).
pub fn essential_reduction(op: &DiffOp, polys: &[&Poly]) -> Result<Option<Reduction>> {
    let n = op.nvars();
    let f = op.field();
    if !f.is_char_zero() || !op.is_constant_coeff() || polys.iter().any(|p| !p.is_polynomial()) {
        return Ok(None);
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for p in polys {
        let grads: Vec<Poly> = (0..n).map(|i| p.derivative(i)).collect();
        let mut monos: Vec<&Monomial> = grads
            .iter()
            .flat_map(|g| g.terms().iter().map(|t| &t.0))
            .collect();
        monos.sort();
        monos.dedup();
        for m in monos {
            rows.push(grads.iter().map(|g| g.coeff(m)).collect());
        }
    }
    if rows.is_empty() {
        rows.push(vec![Scalar::zero(f); n]);
    }
    let kernel = Matrix::from_rows(f, rows)?.nullspace();
    if kernel.is_empty() {
        return Ok(None);
    }
    let k = n - kernel.len();
    if k == 0 {
        return Ok(None);
    }
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for i in 0..n {
        if cols.len() == k {
            break;
        }
        let e: Vec<Scalar> = (0..n).map(|j| Scalar::from_i64(f, (i == j) as i64)).collect();
        let mut trial = cols.clone();
        trial.push(e.clone());
        trial.extend(kernel.iter().cloned());
        if Matrix::from_rows(f, trial.clone())?.rank() == trial.len() {
            cols.push(e);
        }
    }
    cols.extend(kernel);
    let w = Matrix::from_rows(f, cols)?.transpose();
    let u = w.inverse()?;

    let map: Vec<usize> = (0..n).map(|i| i.min(k - 1)).collect();
    let mut reduced = Vec::with_capacity(polys.len());
    for p in polys {
        let q = phi(p, &u)?;
        if q.terms()
            .iter()
            .any(|(m, _)| m.exps()[k..].iter().any(|&e| e != 0))
        {
            return Err(Error::precondition(
                "essential-variable reduction left a removed variable",
            ));
        }
        reduced.push(q.remap_vars(&map, k));
    }
    let conj = op.conjugate(&u)?;
    let terms = conj
        .terms()
        .iter()
        .filter(|(a, _)| a.exps()[k..].iter().all(|&e| e == 0))
        .map(|(a, c)| (a.truncate(k), Poly::constant(k, c.constant_term())));
    let op = DiffOp::from_terms(f, k, terms.collect::<Vec<_>>())?;
    Ok(Some(Reduction {
        u,
        k,
        op,
        polys: reduced,
    }))
}

use super::run::{run_vc, VcExperiment, VcReport};
use crate::algebra::{Field, Scalar};
use crate::diffops::DiffOp;
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, Poly};

/// Whether `op` strictly lowers the degree of every nonzero image of a
/// polynomial of degree at most `max_deg`.
pub fn is_degree_decreasing(op: &DiffOp, max_deg: u32) -> Result<bool> {
    let by_weight = op
        .terms()
        .iter()
        .all(|(a, c)| c.degree().is_none_or(|dc| a.degree() > dc));
    if by_weight {
        return Ok(true);
    }
    let f = op.field();
    let n = op.nvars();
    for d in 0..=max_deg {
        for m in monomials_of_degree(n, d) {
            let img = op.apply(&Poly::monomial(m, Scalar::one(f)))?;
            if img.degree().is_some_and(|e| e >= d as i64) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Vanishing run over a prime field. In corollary mode `Lambda` must strictly
/// decrease degrees on every polynomial the run touches; no nilpotency
/// hypothesis on `P` is needed there.
pub fn run_charp(e: &VcExperiment, corollary: bool) -> Result<VcReport> {
    if !matches!(e.op.field(), Field::PrimeField(_)) {
        return Err(Error::Mode(format!("characteristic-p run over {}", e.op.field())));
    }
    if corollary {
        let d = e.p.degree().unwrap_or(0).max(0) as u32;
        let extra = e.g.as_ref().and_then(Poly::degree).unwrap_or(0).max(0) as u32;
        let top = d * (e.m_max as u32 + e.k_shift) + extra;
        if !is_degree_decreasing(&e.op, top)? {
            return Err(Error::Mode("operator does not strictly decrease degree".into()));
        }
    }
    run_vc(e)
}

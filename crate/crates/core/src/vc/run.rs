use rayon::prelude::*;
use serde::Serialize;

use super::reduce::essential_reduction;
use crate::diffops::DiffOp;
use crate::error::{Error, Result};
use crate::nilpotency::{as_laplace_matrix, check_direct, NilpotencyVerdict};
use crate::poly::{format_poly, Poly};

/// One vanishing experiment: the sequence `Lambda^m P^{m+k}` for
/// `m = 1..=m_max`, or `Lambda^m (g P^m)` when `g` is set.
#[derive(Clone, Debug)]
pub struct VcExperiment {
    pub op: DiffOp,
    pub p: Poly,
    pub g: Option<Poly>,
    pub k_shift: u32,
    pub m_max: usize,
    /// Run `check_direct` on `P` first and embed the verdict.
    pub check_nilpotency: bool,
    /// Work in essential variables when `Lambda` has constant coefficients.
    pub reduce: bool,
    pub emit_polys: bool,
    /// Stop (and flag the report truncated) once a power of `P` exceeds this
    /// many terms.
    pub term_cap: Option<usize>,
}

impl VcExperiment {
    pub fn new(op: DiffOp, p: Poly, m_max: usize) -> Self {
        VcExperiment {
            op,
            p,
            g: None,
            k_shift: 1,
            m_max,
            check_nilpotency: false,
            reduce: true,
            emit_polys: false,
            term_cap: None,
        }
    }

    pub fn with_g(mut self, g: Poly) -> Self {
        self.g = Some(g);
        self
    }

    pub fn with_k_shift(mut self, k: u32) -> Self {
        self.k_shift = k;
        self
    }

    pub fn with_nilpotency_check(mut self, on: bool) -> Self {
        self.check_nilpotency = on;
        self
    }

    pub fn with_reduction(mut self, on: bool) -> Self {
        self.reduce = on;
        self
    }

    pub fn with_emit_polys(mut self, on: bool) -> Self {
        self.emit_polys = on;
        self
    }

    pub fn with_term_cap(mut self, cap: Option<usize>) -> Self {
        self.term_cap = cap;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.m_max == 0 {
            return Err(Error::precondition("m_max must be at least 1"));
        }
        if self.k_shift == 0 && self.g.is_none() {
            return Err(Error::precondition("k_shift must be at least 1"));
        }
        self.op.check_poly(&self.p)?;
        if let Some(g) = &self.g {
            self.op.check_poly(g)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VcMode {
    Standard,
    Ggvc,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VcEntry {
    pub m: usize,
    pub degree: Option<i64>,
    /// Term count in the working coordinates (see `reduced_vars`).
    pub terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VcReport {
    pub mode: VcMode,
    pub k_shift: u32,
    pub m_max: usize,
    pub entries: Vec<VcEntry>,
    pub first_vanish: Option<usize>,
    /// Zero for every computed `m >= first_vanish`, with no truncation.
    pub stable_zero: bool,
    pub truncated: bool,
    /// Whether every nonzero entry has the graded degree
    /// `(m+k) deg P - m w`; absent when `Lambda` or `P` is not homogeneous.
    pub degree_check: Option<bool>,
    pub nilpotency: Option<NilpotencyVerdict>,
    /// Number of essential variables when the run was reduced.
    pub reduced_vars: Option<usize>,
    /// Inputs are polynomials; formal power series are not supported.
    pub input_class: &'static str,
}

/// Runs the experiment. Entries are exact; `first_vanish` and `stable_zero`
/// describe the observed window only.
pub fn run_vc(e: &VcExperiment) -> Result<VcReport> {
    e.validate()?;
    let mut op = e.op.clone();
    let mut p = e.p.clone();
    let mut g = e.g.clone();
    let mut back = None;
    let mut reduced_vars = None;
    if e.reduce {
        let mut polys = vec![&e.p];
        polys.extend(e.g.as_ref());
        if let Some(r) = essential_reduction(&e.op, &polys)? {
            op = r.op;
            p = r.polys[0].clone();
            g = r.polys.get(1).cloned();
            reduced_vars = Some(r.k);
            back = Some((r.u, e.op.nvars()));
        }
    }

    let nilpotency = if e.check_nilpotency {
        let bound = as_laplace_matrix(&op).map_or(e.m_max, |a| a.rank().max(1));
        Some(check_direct(&op, &p, bound)?)
    } else {
        None
    };

    let mode = if g.is_some() {
        VcMode::Ggvc
    } else {
        VcMode::Standard
    };
    let shift = if g.is_some() { 0 } else { e.k_shift as usize };

    // Arguments Lambda^m is applied to, built incrementally.
    let mut args: Vec<Poly> = Vec::with_capacity(e.m_max);
    let mut truncated = false;
    let mut power = p.pow(shift as u32);
    for _ in 1..=e.m_max {
        power = &power * &p;
        if e.term_cap.is_some_and(|cap| power.len() > cap) {
            truncated = true;
            break;
        }
        args.push(match &g {
            Some(g) => g * &power,
            None => power.clone(),
        });
    }

    let values: Vec<Poly> = args
        .into_par_iter()
        .enumerate()
        .map(|(i, a)| op.apply_pow(&a, (i + 1) as u32))
        .collect::<Result<_>>()?;

    let predicted = predicted_degrees(&op, &p, g.as_ref(), shift, values.len());
    let mut entries = Vec::with_capacity(values.len());
    let mut degree_ok = predicted.is_some();
    for (i, v) in values.iter().enumerate() {
        let m = i + 1;
        if let (Some(pred), Some(d)) = (&predicted, v.degree()) {
            degree_ok &= pred[i] == d;
        }
        let poly = if e.emit_polys {
            Some(match &back {
                Some((u, n)) => format_poly(&v.extend_vars(n - v.nvars()).apply_matrix(u)?),
                None => format_poly(v),
            })
        } else {
            None
        };
        entries.push(VcEntry {
            m,
            degree: v.degree(),
            terms: v.len(),
            poly,
        });
    }
    let first_vanish = values.iter().position(Poly::is_zero).map(|i| i + 1);
    let stable_zero = !truncated && first_vanish.is_some_and(|f| values[f - 1..].iter().all(Poly::is_zero));

    Ok(VcReport {
        mode,
        k_shift: e.k_shift,
        m_max: e.m_max,
        entries,
        first_vanish,
        stable_zero,
        truncated,
        degree_check: predicted.map(|_| degree_ok),
        nilpotency,
        reduced_vars,
        input_class: "polynomial",
    })
}

fn predicted_degrees(op: &DiffOp, p: &Poly, g: Option<&Poly>, shift: usize, len: usize) -> Option<Vec<i64>> {
    let w = op.weight()?;
    if !p.is_homogeneous() || p.is_zero() {
        return None;
    }
    let d = p.degree()?;
    let base = match g {
        Some(g) if g.is_homogeneous() && !g.is_zero() => g.degree()?,
        Some(_) => return None,
        None => 0,
    };
    Some(
        (1..=len as i64)
            .map(|m| base + (m + shift as i64) * d - m * w)
            .collect(),
    )
}

/// Smallest `m` with `(m+1) d < k m`: the first vanishing index of
/// `delta^{km} P^{m+1}` for `P` of degree `d` in the direction of `delta`.
pub fn predict_delta_power(k: u32, d: u32) -> Result<usize> {
    if k <= d {
        return Err(Error::NotNilpotent(format!(
            "delta^{k} does not annihilate a polynomial of delta-degree {d}"
        )));
    }
    Ok((d / (k - d)) as usize + 1)
}

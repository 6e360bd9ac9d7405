//! Vanishing for `Lambda = D^a` restated through holomorphic parts of
//! Laurent powers `f = z^{-a} P`, and probes of the constant-term and
//! holomorphic-part functionals on `g f^m`.

use serde::{Deserialize, Serialize};

use crate::algebra::Scalar;
use crate::diffops::DiffOp;
use crate::error::{Error, Result};
use crate::nilpotency::check_direct;
use crate::poly::{format_poly, inverse_monomial, LaurentPoly, Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentRow {
    pub m: u32,
    pub zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestatedReport {
    pub a: Vec<u32>,
    pub m_max: u32,
    /// `hol(f^m)` for `m = 1..=m_max`.
    pub phase1: Vec<LaurentRow>,
    /// Every phase-1 value vanished: `P` is `D^a`-nilpotent up to `m_max`.
    pub nilpotent_up_to_bound: bool,
    /// Phase 1 agrees with the direct check of `D^a` at the same bound.
    pub direct_agrees: bool,
    /// `hol(P f^m)` for `m = 1..=m_max`.
    pub phase2: Vec<LaurentRow>,
    pub first_vanish: Option<u32>,
    pub stable_zero: bool,
    /// Phase 2 agrees with `D^{ma} P^{m+1} = 0` at every `m`.
    pub operator_agrees: bool,
}

fn row(m: u32, v: &Poly, emit: bool) -> LaurentRow {
    LaurentRow {
        m,
        zero: v.is_zero(),
        value: (emit && !v.is_zero()).then(|| format_poly(v)),
    }
}

fn first_vanish(rows: &[LaurentRow]) -> (Option<u32>, bool) {
    let first = rows.iter().position(|r| r.zero);
    let stable = first.is_some_and(|i| rows[i..].iter().all(|r| r.zero));
    (first.map(|i| rows[i].m), stable)
}

/// Runs both phases for `f = z^{-a} P` and cross-checks each against the
/// operator `D^a` acting on powers of `P`.
pub fn restated_vc(a: &[u32], p: &Poly, m_max: u32, emit: bool) -> Result<RestatedReport> {
    if a.len() != p.nvars() {
        return Err(Error::NvarsMismatch(p.nvars(), a.len()));
    }
    if a.iter().sum::<u32>() < 2 {
        return Err(Error::precondition("need |a| >= 2"));
    }
    if m_max == 0 {
        return Err(Error::precondition("m_max must be at least 1"));
    }
    if p.field().characteristic() != 0 || !p.is_polynomial() {
        return Err(Error::precondition(
            "restated VC needs a polynomial in characteristic 0",
        ));
    }
    let ai: Vec<i32> = a.iter().map(|&x| x as i32).collect();
    let f = &inverse_monomial(p.field(), &ai) * p;
    let da = DiffOp::derivative(p.field(), Monomial::new(&ai), Scalar::one(p.field()));

    let mut phase1 = Vec::new();
    let mut phase2 = Vec::new();
    let mut operator_agrees = true;
    let mut fm = Poly::one(p.field(), p.nvars());
    let mut pm1 = p.clone();
    for m in 1..=m_max {
        fm = &fm * &f;
        pm1 = &pm1 * p;
        phase1.push(row(m, &fm.holomorphic_part(), emit));
        let h2 = (p * &fm).holomorphic_part();
        operator_agrees &= h2.is_zero() == da.apply_pow(&pm1, m)?.is_zero();
        phase2.push(row(m, &h2, emit));
    }
    let nilpotent_up_to_bound = phase1.iter().all(|r| r.zero);
    let direct = check_direct(&da, p, m_max as usize)?;
    let (first_vanish, stable_zero) = first_vanish(&phase2);
    Ok(RestatedReport {
        a: a.to_vec(),
        m_max,
        phase1,
        nilpotent_up_to_bound,
        direct_agrees: direct.is_nilpotent == nilpotent_up_to_bound,
        phase2,
        first_vanish,
        stable_zero,
        operator_agrees,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeMode {
    HolomorphicPart,
    ConstantTerm,
}

#[derive(Clone, Debug)]
pub struct LaurentProbe {
    pub f: LaurentPoly,
    pub g: LaurentPoly,
    pub mode: ProbeMode,
    pub m_max: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub mode: ProbeMode,
    pub m_max: u32,
    /// The tracked functional of `f^m` vanished for every `m <= m_max`.
    pub hypothesis_met: bool,
    /// First `m` where the hypothesis failed.
    pub hypothesis_failure: Option<u32>,
    /// The tracked functional of `g f^m`, `m = 1..=m_max`.
    pub rows: Vec<LaurentRow>,
    /// Smallest `m0` with zero values on `m0..=m_max`.
    pub vanishes_from: Option<u32>,
    /// Constant-term mode only: the hypothesis holds but `g f^m` was still
    /// nonzero at `m_max`. The theorem rules this out for large `m_max`, so
    /// this points at a bug or at too small a window.
    pub contradiction: bool,
}

fn tracked(mode: ProbeMode, v: &Poly) -> Poly {
    match mode {
        ProbeMode::HolomorphicPart => v.holomorphic_part(),
        ProbeMode::ConstantTerm => Poly::constant(v.nvars(), v.constant_term()),
    }
}

pub fn probe(p: &LaurentProbe) -> Result<ProbeReport> {
    if p.m_max == 0 {
        return Err(Error::precondition("m_max must be at least 1"));
    }
    p.f.check_compatible(&p.g)?;
    let mut fm = Poly::one(p.f.field(), p.f.nvars());
    let mut hypothesis_failure = None;
    let mut rows = Vec::new();
    for m in 1..=p.m_max {
        fm = &fm * &p.f;
        if hypothesis_failure.is_none() && !tracked(p.mode, &fm).is_zero() {
            hypothesis_failure = Some(m);
        }
        rows.push(row(m, &tracked(p.mode, &(&p.g * &fm)), true));
    }
    let vanishes_from = match rows.iter().rposition(|r| !r.zero) {
        None => Some(1),
        Some(i) if i + 1 < rows.len() => Some(rows[i + 1].m),
        Some(_) => None,
    };
    let hypothesis_met = hypothesis_failure.is_none();
    Ok(ProbeReport {
        mode: p.mode,
        m_max: p.m_max,
        hypothesis_met,
        hypothesis_failure,
        rows,
        vanishes_from,
        contradiction: p.mode == ProbeMode::ConstantTerm && hypothesis_met && vanishes_from.is_none(),
    })
}

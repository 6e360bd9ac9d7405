use rayon::prelude::*;
use serde_json::{json, Value};

use super::descriptor::{
    infer_nvars, named_context, parse_batch, parse_family, DeformDescriptor, FrameJson, VcDescriptor, VcJob,
};
use super::{
    CheckArgs, Cli, Command, Common, Criterion, DeformArgs, GenArgs, IsotropyArgs, LaurentArgs, LaurentMode,
    Outcome, RodriguesArgs, RunManifest, VcArgs,
};
use crate::algebra::Field;
use crate::deformation::{run_deformation, DeformationOptions};
use crate::diffops::{DiffOp, DiffOpJson, SymBilinearContext};
use crate::error::{Error, Result};
use crate::isotropy::{isotropy_suite, quadratic_isotropy, BilinearFormContext};
use crate::laurent_vc::{probe, restated_vc, LaurentProbe, ProbeMode};
use crate::nilpotency::{
    check_direct, check_direct_ctx, check_directional, check_hessian_fullrank, check_omega, check_quadratic,
    quadratic_matrix,
};
use crate::poly::{format_poly, parse_poly};
use crate::rodrigues::{generate_table, orthogonality_table, FamilyKind};
use crate::vc::{generate_hn, run_charp, run_vc, VcExperiment};

pub(super) fn dispatch(cli: &Cli, m: &mut RunManifest) -> Result<Outcome> {
    match &cli.command {
        Command::Check(a) => check(a, m),
        Command::Vc(a) => vc(a, &cli.common, m),
        Command::Laurent(a) => laurent(a, m),
        Command::Deform(a) => deform(a, m),
        Command::Isotropy(a) => isotropy(a, m),
        Command::Rodrigues(a) => rodrigues(a, m),
        Command::Gen(a) => gen(a, m),
    }
}

fn field(s: &str, m: &mut RunManifest) -> Result<Field> {
    let f: Field = s.parse()?;
    m.field = Some(f.to_string());
    Ok(f)
}

/// Literal text, or the contents of a file for `@path`.
fn read_arg(name: &str, s: &str, m: &mut RunManifest) -> Result<String> {
    let text = match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => s.to_string(),
    };
    m.hash_input(name, text.as_bytes());
    Ok(text)
}

fn read_file(name: &str, path: &str, m: &mut RunManifest) -> Result<String> {
    let text = std::fs::read_to_string(path)?;
    m.hash_input(name, text.as_bytes());
    Ok(text)
}

fn context(spec: Option<&str>, n: usize, f: Field) -> Result<SymBilinearContext> {
    match spec {
        Some(s) => named_context(s, f),
        None => SymBilinearContext::laplace(f, n),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn check(a: &CheckArgs, m: &mut RunManifest) -> Result<Outcome> {
    let f = field(&a.field, m)?;
    m.seed = Some(a.seed);
    let poly_text = a.poly.as_deref().map(|p| read_arg("poly", p, m)).transpose()?;
    let (verdict, extra) = if let Some(op) = &a.operator {
        if a.criterion != Criterion::Direct {
            return Err(Error::Unsupported(
                "general operators support the direct criterion only".into(),
            ));
        }
        let j: DiffOpJson = serde_json::from_str(&read_arg("operator", op, m)?)?;
        let op = DiffOp::from_json(&j, f)?;
        let text = poly_text.ok_or_else(|| Error::precondition("--poly is required"))?;
        let p = parse_poly(&text, op.nvars(), f, false)?;
        (check_direct(&op, &p, a.bound.unwrap_or(10))?, Value::Null)
    } else {
        let n = a
            .nvars
            .unwrap_or_else(|| infer_nvars(&[poly_text.as_deref().unwrap_or("")]));
        let ctx = context(a.matrix_a.as_deref(), n, f)?;
        if a.criterion == Criterion::Omega {
            let path = a
                .frame
                .as_deref()
                .ok_or_else(|| Error::precondition("--frame is required"))?;
            let fj: FrameJson = serde_json::from_str(&read_file("frame", path, m)?)?;
            let frame = fj.to_frame(&ctx)?;
            let v = check_omega(&frame, a.omega_j)?;
            (v, json!({ "poly": format_poly(&frame.assemble()) }))
        } else {
            let text = poly_text.ok_or_else(|| Error::precondition("--poly is required"))?;
            let p = parse_poly(&text, ctx.nvars(), f, false)?;
            match a.criterion {
                Criterion::Direct => match a.bound {
                    Some(b) => (check_direct(ctx.delta(), &p, b)?, Value::Null),
                    None => (check_direct_ctx(&ctx, &p)?, Value::Null),
                },
                Criterion::Hessian => (check_hessian_fullrank(&ctx, &p)?, Value::Null),
                Criterion::Quadratic => (check_quadratic(&ctx, &quadratic_matrix(&p)?)?, Value::Null),
                Criterion::Directional => {
                    let r = check_directional(&ctx, &p, a.samples, a.seed)?;
                    (
                        r.verdict.clone(),
                        json!({ "samples": to_value(&r.samples), "violation": r.violation }),
                    )
                }
                Criterion::Omega => unreachable!(),
            }
        }
    };
    let mut report = to_value(&verdict);
    if !extra.is_null() {
        report["details"] = extra;
    }
    let witness = verdict.witness.as_ref().map(|w| format!("m={} {}", w.m, w.value));
    Ok(Outcome {
        code: code(verdict.is_nilpotent),
        table: vec![format!(
            "{:<12} nilpotent={:<5} conclusive={:<5} bound={} {}",
            format!("{:?}", a.criterion).to_lowercase(),
            verdict.is_nilpotent,
            verdict.conclusive,
            verdict.bound,
            witness.unwrap_or_default()
        )],
        records: vec![report],
    })
}

fn vc(a: &VcArgs, common: &Common, m: &mut RunManifest) -> Result<Outcome> {
    m.seed = Some(a.seed);
    let jobs: Vec<VcJob> = match &a.batch {
        Some(path) => parse_batch::<VcDescriptor, _>(&read_file("batch", path, m)?, VcDescriptor::resolve)?
            .into_iter()
            .map(|(_, j)| j)
            .collect(),
        None => {
            let p = a
                .poly
                .clone()
                .ok_or_else(|| Error::precondition("--poly or --batch is required"))?;
            m.hash_input("poly", p.as_bytes());
            let n = infer_nvars(&[&p, a.g.as_deref().unwrap_or("")]);
            let d = VcDescriptor {
                label: None,
                field: Some(a.field.clone()),
                nvars: None,
                operator: a
                    .operator
                    .as_deref()
                    .map(|o| read_arg("operator", o, m))
                    .transpose()?
                    .map(|o| serde_json::from_str(&o))
                    .transpose()?,
                matrix_a: match (&a.operator, &a.matrix_a) {
                    (None, None) => Some(Value::String(format!("I{n}"))),
                    (_, s) => s.clone().map(Value::String),
                },
                p,
                g: a.g.clone(),
                k_shift: a.k_shift,
                m_max: a.m_max,
                check_nilpotency: Some(a.check_nilpotency),
                corollary: Some(a.corollary),
            };
            vec![d.resolve()?]
        }
    };
    if let Some(j) = jobs.first() {
        m.field = Some(j.field.to_string());
    }
    let cap = common.mem_cap_mb.map(|mb| mb * 4096);
    let reports: Vec<(Option<String>, crate::vc::VcReport)> = jobs
        .par_iter()
        .map(|j| {
            let mut e = VcExperiment::new(j.op.clone(), j.p.clone(), j.m_max.or(a.m_max).unwrap_or(10))
                .with_k_shift(j.k_shift)
                .with_nilpotency_check(j.check_nilpotency || a.check_nilpotency)
                .with_emit_polys(a.emit_polys)
                .with_term_cap(cap);
            if let Some(g) = &j.g {
                e = e.with_g(g.clone());
            }
            let r = if j.field.characteristic() > 0 {
                run_charp(&e, j.corollary || a.corollary)?
            } else {
                run_vc(&e)?
            };
            Ok((j.label.clone(), r))
        })
        .collect::<Result<_>>()?;
    let ok = reports.iter().all(|(_, r)| r.stable_zero);
    Ok(Outcome {
        code: code(ok),
        table: reports
            .iter()
            .enumerate()
            .map(|(i, (label, r))| {
                format!(
                    "{:<16} m_max={:<4} first_vanish={:<6} stable={:<5} truncated={}",
                    label.clone().unwrap_or_else(|| format!("#{i}")),
                    r.m_max,
                    r.first_vanish.map_or("-".to_string(), |v| v.to_string()),
                    r.stable_zero,
                    r.truncated
                )
            })
            .collect(),
        records: reports
            .iter()
            .map(|(label, r)| {
                let mut v = to_value(r);
                if let Some(l) = label {
                    v["label"] = Value::String(l.clone());
                }
                v
            })
            .collect(),
    })
}

fn laurent(a: &LaurentArgs, m: &mut RunManifest) -> Result<Outcome> {
    let f = field(&a.field, m)?;
    if a.mode == LaurentMode::Restated {
        let idx: Vec<u32> =
            a.a.as_deref()
                .ok_or_else(|| Error::precondition("--a is required"))?
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::descriptor("/a", "expected nonnegative integers"))
                })
                .collect::<Result<_>>()?;
        let text = a
            .poly
            .as_deref()
            .ok_or_else(|| Error::precondition("--poly is required"))?;
        m.hash_input("poly", text.as_bytes());
        let p = parse_poly(text, idx.len(), f, false)?;
        let r = restated_vc(&idx, &p, a.m_max, a.emit_polys)?;
        return Ok(Outcome {
            code: code(r.stable_zero && r.direct_agrees && r.operator_agrees),
            table: vec![format!(
                "a={:?} nilpotent_up_to_bound={} direct_agrees={} first_vanish={} stable={}",
                r.a,
                r.nilpotent_up_to_bound,
                r.direct_agrees,
                r.first_vanish.map_or("-".into(), |v| v.to_string()),
                r.stable_zero
            )],
            records: vec![to_value(&r)],
        });
    }
    let (ft, gt) = match (&a.f, &a.g) {
        (Some(f), Some(g)) => (f.as_str(), g.as_str()),
        _ => return Err(Error::precondition("--f and --g are required")),
    };
    m.hash_input("f", ft.as_bytes());
    m.hash_input("g", gt.as_bytes());
    let n = a.nvars.unwrap_or_else(|| infer_nvars(&[ft, gt]));
    let mode = match a.mode {
        LaurentMode::ConstantTerm => ProbeMode::ConstantTerm,
        _ => ProbeMode::HolomorphicPart,
    };
    let r = probe(&LaurentProbe {
        f: parse_poly(ft, n, f, true)?,
        g: parse_poly(gt, n, f, true)?,
        mode,
        m_max: a.m_max,
    })?;
    let mut table = vec![format!(
        "hypothesis_met={} vanishes_from={}",
        r.hypothesis_met,
        r.vanishes_from.map_or("-".into(), |v| v.to_string())
    )];
    if r.contradiction {
        table.push("CONTRADICTION: hypothesis holds but g f^m did not vanish by m_max".into());
    }
    Ok(Outcome {
        code: code(r.hypothesis_met && r.vanishes_from.is_some() && !r.contradiction),
        table,
        records: vec![to_value(&r)],
    })
}

fn deform(a: &DeformArgs, m: &mut RunManifest) -> Result<Outcome> {
    let base = DeformationOptions {
        n_t: a.n_t,
        n_z: a.n_z,
        n_s: a.n_s,
        k_max: a.k_max,
        emit_polys: a.emit_polys,
    };
    let jobs: Vec<(
        Option<String>,
        SymBilinearContext,
        crate::poly::Poly,
        DeformationOptions,
    )> = match &a.batch {
        Some(path) => {
            parse_batch::<DeformDescriptor, _>(&read_file("batch", path, m)?, DeformDescriptor::resolve)?
                .into_iter()
                .map(|(d, (ctx, p))| {
                    let opts = DeformationOptions {
                        n_t: d.n_t.unwrap_or(base.n_t),
                        n_z: d.n_z.unwrap_or(base.n_z),
                        n_s: d.n_s.unwrap_or(base.n_s),
                        ..base.clone()
                    };
                    (d.label, ctx, p, opts)
                })
                .collect()
        }
        None => {
            let f = field(&a.field, m)?;
            let text = a
                .poly
                .as_deref()
                .ok_or_else(|| Error::precondition("--poly or --batch is required"))?;
            m.hash_input("poly", text.as_bytes());
            let ctx = context(a.matrix_a.as_deref(), infer_nvars(&[text]), f)?;
            let p = parse_poly(text, ctx.nvars(), f, false)?;
            vec![(None, ctx, p, base.clone())]
        }
    };
    let reports = jobs
        .par_iter()
        .map(|(l, ctx, p, o)| Ok((l.clone(), run_deformation(ctx, p, o)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome {
        code: code(reports.iter().all(|(_, r)| r.all_ok())),
        table: reports
            .iter()
            .enumerate()
            .map(|(i, (l, r))| {
                format!(
                    "{:<12} n_t={} nilpotent={:<5} inverse={:<5} gradient={:<5} curl_free={:<5} solvers={:<5} ok={}",
                    l.clone().unwrap_or_else(|| format!("#{i}")),
                    r.n_t,
                    r.nilpotent,
                    r.f_after_g_is_id && r.g_after_f_is_id,
                    r.gradient_form,
                    r.curl_free,
                    r.solvers_agree.map_or("-".into(), |b| b.to_string()),
                    r.all_ok()
                )
            })
            .collect(),
        records: reports
            .iter()
            .map(|(l, r)| {
                let mut v = to_value(r);
                if let Some(l) = l {
                    v["label"] = Value::String(l.clone());
                }
                v
            })
            .collect(),
    })
}

fn isotropy(a: &IsotropyArgs, m: &mut RunManifest) -> Result<Outcome> {
    let f = field(&a.field, m)?;
    m.seed = Some(a.seed);
    m.hash_input("poly", a.poly.as_bytes());
    let ctx = context(a.matrix_a.as_deref(), infer_nvars(&[&a.poly]), f)?;
    let p = parse_poly(&a.poly, ctx.nvars(), f, false)?;
    let fc = BilinearFormContext::new(ctx)?;
    let r = if p.degree() == Some(2) {
        quadratic_isotropy(&fc, &p, a.m_max, a.seed)?
    } else {
        isotropy_suite(&fc, &p, a.m_max, a.seed)?
    };
    let mut table: Vec<String> = r
        .rows
        .iter()
        .map(|x| format!("m={:<3} {:<16} vanished={}", x.m, x.generator_id, x.vanished))
        .collect();
    table.push(format!("violations: {}", r.violations.len()));
    Ok(Outcome {
        code: code(r.all_vanished()),
        table,
        records: vec![to_value(&r)],
    })
}

fn rodrigues(a: &RodriguesArgs, m: &mut RunManifest) -> Result<Outcome> {
    m.field = Some(Field::Rationals.to_string());
    let fam = parse_family(&a.family, a.nvars)?;
    let rows = generate_table(&fam, a.upto)?;
    let mut records: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "family": fam.name, "row": to_value(r) }))
        .collect();
    let mut table: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "{:<12} deg={:<3} {}",
                format!("{:?}", r.m),
                r.degree.unwrap_or(-1),
                r.poly
            )
        })
        .collect();
    let mut ok = true;
    if a.orthogonality {
        let within_degree_free = matches!(fam.kind, FamilyKind::Ball { .. } | FamilyKind::Simplex { .. });
        for x in orthogonality_table(&fam, a.upto)? {
            let same = x.m1 == x.m2;
            let same_degree = x.m1.iter().sum::<u32>() == x.m2.iter().sum::<u32>();
            let pass = if same {
                x.is_positive()
            } else {
                x.is_zero() || (within_degree_free && same_degree)
            };
            ok &= pass;
            table.push(format!("<{:?}, {:?}> = {} * {}", x.m1, x.m2, x.value, x.unit));
            records.push(json!({ "family": fam.name, "multiplier": to_value(&x), "pass": pass }));
        }
    }
    Ok(Outcome {
        code: code(ok),
        table,
        records,
    })
}

fn gen(a: &GenArgs, m: &mut RunManifest) -> Result<Outcome> {
    if !a.hn {
        return Err(Error::precondition("only --hn generation is available"));
    }
    let f = field("Qi", m)?;
    m.seed = Some(a.seed);
    let ctx = context(a.matrix_a.as_deref(), a.nvars, f)?;
    let examples = (0..a.count as u64)
        .into_par_iter()
        .map(|i| generate_hn(&ctx, a.degree, a.frame, a.shape.into(), a.seed + i))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome {
        code: code(examples.iter().all(|e| e.verdict.is_nilpotent)),
        table: examples
            .iter()
            .map(|e| {
                format!(
                    "seed={:<6} verified={:<5} {}",
                    e.seed,
                    e.verdict.is_nilpotent,
                    format_poly(&e.p)
                )
            })
            .collect(),
        records: examples
            .iter()
            .map(|e| {
                json!({
                    "p": format_poly(&e.p),
                    "frame": to_value(&FrameJson::from_frame(&e.frame)),
                    "verified": e.verdict.is_nilpotent,
                    "verdict": to_value(&e.verdict),
                    "shape": to_value(&e.shape),
                    "seed": e.seed,
                    "attempts": e.attempts,
                })
            })
            .collect(),
    })
}

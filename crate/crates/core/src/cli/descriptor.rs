use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Field, Matrix, MatrixJson, Scalar};
use crate::diffops::{DiffOp, DiffOpJson, SymBilinearContext};
use crate::error::{Error, Result};
use crate::nilpotency::IsotropicFrame;
use crate::poly::{parse_poly, parse_scalar, Poly};
use crate::rodrigues::WeightFamily;

/// Moves a descriptor error under `base` in the JSON-pointer path.
pub fn under(base: &str, e: Error) -> Error {
    match e {
        Error::Descriptor { path, msg } => Error::Descriptor {
            path: format!("{base}{path}"),
            msg,
        },
        other => Error::Descriptor {
            path: base.to_string(),
            msg: other.to_string(),
        },
    }
}

/// Largest `z<k>` / `x<k>` index in polynomial text.
pub fn infer_nvars(texts: &[&str]) -> usize {
    let mut n = 0;
    for t in texts {
        let b = t.as_bytes();
        for i in 0..b.len() {
            if (b[i] == b'z' || b[i] == b'x') && b.get(i + 1).is_some_and(u8::is_ascii_digit) {
                let digits: String = t[i + 1..].chars().take_while(char::is_ascii_digit).collect();
                n = n.max(digits.parse::<usize>().unwrap_or(0));
            }
        }
    }
    n.max(1)
}

/// Named forms `I<n>`, `M<n>` (Minkowski), `S<k>` (symplectic, `2k`
/// variables) and `C<k>` (complex Laplacian), or an inline matrix JSON object.
pub fn parse_matrix(spec: &Value, field: Field) -> Result<SymBilinearContext> {
    match spec {
        Value::String(s) => named_context(s, field),
        Value::Object(_) => {
            let j: MatrixJson = serde_json::from_value(spec.clone())?;
            if j.field != field {
                return Err(Error::descriptor(
                    "/field",
                    format!("matrix field {} differs from {field}", j.field),
                ));
            }
            SymBilinearContext::new(Matrix::from_json(&j)?)
        }
        _ => Err(Error::descriptor("", "expected a matrix name or object")),
    }
}

pub fn named_context(s: &str, field: Field) -> Result<SymBilinearContext> {
    let s = s.trim();
    if s.starts_with('{') {
        return parse_matrix(&serde_json::from_str(s)?, field);
    }
    let (kind, size) = s.split_at(1.min(s.len()));
    let k: usize = size
        .parse()
        .map_err(|_| Error::descriptor("", format!("unknown matrix name {s:?}")))?;
    match kind {
        "I" => SymBilinearContext::laplace(field, k),
        "M" => SymBilinearContext::minkowski(field, k),
        "S" => SymBilinearContext::symplectic(field, k),
        "C" => SymBilinearContext::complex_laplacian(field, k),
        _ => Err(Error::descriptor("", format!("unknown matrix name {s:?}"))),
    }
}

fn parse_field(s: Option<&str>, default: Field) -> Result<Field> {
    match s {
        None => Ok(default),
        Some(s) => s.parse().map_err(|e| Error::descriptor("/field", e)),
    }
}

fn poly_at(path: &str, text: &str, n: usize, f: Field, laurent: bool) -> Result<Poly> {
    parse_poly(text, n, f, laurent).map_err(|e| Error::descriptor(path, e))
}

/// One entry of a `vc` batch file.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct VcDescriptor {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default)]
    pub nvars: Option<usize>,
    #[serde(default)]
    pub operator: Option<DiffOpJson>,
    #[serde(default)]
    pub matrix_a: Option<Value>,
    pub p: String,
    #[serde(default)]
    pub g: Option<String>,
    #[serde(default)]
    pub k_shift: Option<u32>,
    #[serde(default)]
    pub m_max: Option<usize>,
    #[serde(default)]
    pub check_nilpotency: Option<bool>,
    /// Characteristic `p` only: require a degree-decreasing operator.
    #[serde(default)]
    pub corollary: Option<bool>,
}

pub struct VcJob {
    pub label: Option<String>,
    pub field: Field,
    pub op: DiffOp,
    pub p: Poly,
    pub g: Option<Poly>,
    pub k_shift: u32,
    pub m_max: Option<usize>,
    pub check_nilpotency: bool,
    pub corollary: bool,
}

impl VcDescriptor {
    pub fn resolve(&self) -> Result<VcJob> {
        let field = parse_field(self.field.as_deref(), Field::Rationals)?;
        let (op, n) = match (&self.operator, &self.matrix_a) {
            (Some(_), Some(_)) => {
                return Err(Error::descriptor("/operator", "give either operator or matrix_a"))
            }
            (Some(j), None) => {
                let op = DiffOp::from_json(j, field).map_err(|e| under("/operator", e))?;
                (op, j.nvars)
            }
            (None, Some(m)) => {
                let ctx = parse_matrix(m, field).map_err(|e| under("/matrix_a", e))?;
                let n = ctx.nvars();
                (ctx.delta().clone(), n)
            }
            (None, None) => return Err(Error::descriptor("", "missing operator or matrix_a")),
        };
        if let Some(k) = self.nvars.filter(|&k| k != n) {
            return Err(Error::descriptor(
                "/nvars",
                format!("{k} differs from the operator's {n}"),
            ));
        }
        let p = poly_at("/p", &self.p, n, field, false)?;
        let g = self
            .g
            .as_deref()
            .map(|t| poly_at("/g", t, n, field, false))
            .transpose()?;
        if self.k_shift == Some(0) {
            return Err(Error::descriptor("/k_shift", "must be at least 1"));
        }
        if self.m_max == Some(0) {
            return Err(Error::descriptor("/m_max", "must be at least 1"));
        }
        Ok(VcJob {
            label: self.label.clone(),
            field,
            op,
            p,
            g,
            k_shift: self.k_shift.unwrap_or(1),
            m_max: self.m_max,
            check_nilpotency: self.check_nilpotency.unwrap_or(false),
            corollary: self.corollary.unwrap_or(false),
        })
    }
}

/// One entry of a `deform` batch file.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DeformDescriptor {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub field: Option<String>,
    pub matrix_a: Value,
    pub p: String,
    #[serde(default)]
    pub n_t: Option<usize>,
    #[serde(default)]
    pub n_z: Option<i64>,
    #[serde(default)]
    pub n_s: Option<usize>,
}

impl DeformDescriptor {
    pub fn resolve(&self) -> Result<(SymBilinearContext, Poly)> {
        let field = parse_field(self.field.as_deref(), Field::GaussianRationals)?;
        let ctx = parse_matrix(&self.matrix_a, field).map_err(|e| under("/matrix_a", e))?;
        let p = poly_at("/p", &self.p, ctx.nvars(), field, false)?;
        Ok((ctx, p))
    }
}

/// Parses a JSON array file of descriptors, reporting errors at `/<index>...`.
pub fn parse_batch<T, U>(text: &str, resolve: impl Fn(&T) -> Result<U>) -> Result<Vec<(T, U)>>
where
    T: for<'de> Deserialize<'de>,
{
    let v: Value = serde_json::from_str(text)?;
    let items = v
        .as_array()
        .ok_or_else(|| Error::descriptor("", "batch file must be a JSON array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let d: T =
                serde_json::from_value(item.clone()).map_err(|e| Error::descriptor(format!("/{i}"), e))?;
            let u = resolve(&d).map_err(|e| under(&format!("/{i}"), e))?;
            Ok((d, u))
        })
        .collect()
}

/// Exchange format for isotropic frames.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FrameJson {
    pub d: u32,
    pub vectors: Vec<Vec<String>>,
    pub coeffs: Vec<String>,
}

impl FrameJson {
    pub fn from_frame(f: &IsotropicFrame) -> Self {
        FrameJson {
            d: f.degree(),
            vectors: f
                .vectors()
                .iter()
                .map(|v| v.iter().map(Scalar::to_plain_string).collect())
                .collect(),
            coeffs: f.coeffs().iter().map(Scalar::to_plain_string).collect(),
        }
    }

    pub fn to_frame(&self, ctx: &SymBilinearContext) -> Result<IsotropicFrame> {
        let f = ctx.field();
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.iter()
                    .enumerate()
                    .map(|(k, s)| {
                        parse_scalar(s, f).map_err(|e| Error::descriptor(format!("/vectors/{i}/{k}"), e))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, s)| parse_scalar(s, f).map_err(|e| Error::descriptor(format!("/coeffs/{i}"), e)))
            .collect::<Result<Vec<_>>>()?;
        IsotropicFrame::new(ctx.clone(), self.d, vectors, coeffs)
    }
}

fn params(spec: &str, want: usize, defaults: &[&str]) -> Result<Vec<Scalar>> {
    let given: Vec<&str> = if spec.is_empty() {
        vec![]
    } else {
        spec.split(',').collect()
    };
    if given.len() > want {
        return Err(Error::descriptor(
            "/family",
            format!("expected at most {want} parameters"),
        ));
    }
    (0..want)
        .map(|i| {
            let s = given
                .get(i)
                .copied()
                .unwrap_or(defaults[i.min(defaults.len() - 1)]);
            parse_scalar(s.trim(), Field::Rationals).map_err(|e| Error::descriptor("/family", e))
        })
        .collect()
}

/// Family specs: `hermite`, `laguerre[:alpha]`, `jacobi[:alpha,beta]`,
/// `gegenbauer[:lambda]`, `ball[:mu]`, `simplex[:k1,...,k_{n+1}]`; products
/// join one-variable specs with `*`.
pub fn parse_family(spec: &str, nvars: usize) -> Result<WeightFamily> {
    if spec.contains('*') {
        let factors = spec
            .split('*')
            .map(|s| parse_family(s.trim(), 1))
            .collect::<Result<Vec<_>>>()?;
        return WeightFamily::product(factors);
    }
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match name {
        "hermite" => Ok(WeightFamily::hermite()),
        "laguerre" => WeightFamily::laguerre(&params(rest, 1, &["0"])?[0]),
        "jacobi" => {
            let p = params(rest, 2, &["0"])?;
            WeightFamily::jacobi(&p[0], &p[1])
        }
        "gegenbauer" => WeightFamily::gegenbauer(&params(rest, 1, &["1"])?[0]),
        "ball" => WeightFamily::ball(nvars, &params(rest, 1, &["1"])?[0]),
        "simplex" => WeightFamily::simplex(&params(rest, nvars + 1, &["0"])?),
        other => Err(Error::descriptor("/family", format!("unknown family {other:?}"))),
    }
}

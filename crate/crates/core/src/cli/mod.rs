//! Batch front end. Every command prints JSON lines of the form
//! `{"manifest": ..., "report": ...}`; `--pretty` prints a table instead.
//! Exit codes: 0 nilpotent / all checks passed, 1 negative outcome, 2 error.

mod commands;
pub mod descriptor;
mod manifest;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

pub use manifest::{sha256_hex, RunManifest};

use crate::error::Error;
use crate::vc::FrameShape;

#[derive(Parser, Debug)]
#[command(
    name = "nilvc",
    version,
    about = "Exact experiments on Lambda-nilpotent polynomials"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Worker threads (not recorded in manifests).
    #[arg(long, global = true, env = "WORKERS")]
    pub threads: Option<usize>,
    /// Soft memory cap; bounds the number of terms kept per power.
    #[arg(long, global = true, env = "MEM_CAP_MB")]
    pub mem_cap_mb: Option<usize>,
    /// Human-readable table instead of JSON lines.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Record wall-clock time in the manifest.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Nilpotency verdict for one polynomial.
    Check(CheckArgs),
    /// Vanishing sequences Lambda^m P^{m+k}.
    Vc(VcArgs),
    /// Laurent restatement for D^a, or a constant-term / holomorphic probe.
    Laurent(LaurentArgs),
    /// Inverse maps, Cauchy solvers and the heat check.
    Deform(DeformArgs),
    /// Isotropy identities for nilpotent polynomials.
    Isotropy(IsotropyArgs),
    /// Rodrigues-formula orthogonal polynomials.
    Rodrigues(RodriguesArgs),
    /// Generated Hessian-nilpotent examples.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Criterion {
    Direct,
    Hessian,
    Quadratic,
    Omega,
    Directional,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long, default_value = "Qi")]
    pub field: String,
    #[arg(long)]
    pub nvars: Option<usize>,
    /// `I<n>`, `M<n>`, `S<k>`, `C<k>` or a matrix JSON object.
    #[arg(long, conflicts_with = "operator")]
    pub matrix_a: Option<String>,
    /// Operator JSON (or `@file`).
    #[arg(long)]
    pub operator: Option<String>,
    #[arg(long, value_enum, default_value = "direct")]
    pub criterion: Criterion,
    /// Window for the direct check; defaults to the rank of `A`.
    #[arg(long)]
    pub bound: Option<usize>,
    /// Frame JSON file for the omega criterion.
    #[arg(long)]
    pub frame: Option<String>,
    #[arg(long)]
    pub omega_j: Option<u32>,
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct VcArgs {
    /// JSON array of experiment descriptors.
    #[arg(long)]
    pub batch: Option<String>,
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long, default_value = "Qi")]
    pub field: String,
    #[arg(long)]
    pub matrix_a: Option<String>,
    #[arg(long)]
    pub operator: Option<String>,
    #[arg(long)]
    pub k_shift: Option<u32>,
    #[arg(long)]
    pub m_max: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub emit_polys: bool,
    #[arg(long)]
    pub check_nilpotency: bool,
    /// Characteristic `p`: require a degree-decreasing operator.
    #[arg(long)]
    pub corollary: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LaurentMode {
    Restated,
    HolomorphicPart,
    ConstantTerm,
}

#[derive(Args, Debug)]
pub struct LaurentArgs {
    #[arg(long, value_enum, default_value = "restated")]
    pub mode: LaurentMode,
    /// Multi-index `a` as `2,1`.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[arg(long)]
    pub nvars: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub m_max: u32,
    #[arg(long)]
    pub emit_polys: bool,
}

#[derive(Args, Debug)]
pub struct DeformArgs {
    #[arg(long)]
    pub batch: Option<String>,
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long, default_value = "Qi")]
    pub field: String,
    #[arg(long)]
    pub matrix_a: Option<String>,
    #[arg(long, default_value_t = 6)]
    pub n_t: usize,
    #[arg(long, default_value_t = 14)]
    pub n_z: i64,
    #[arg(long, default_value_t = 3)]
    pub n_s: usize,
    #[arg(long, default_value_t = 2)]
    pub k_max: usize,
    #[arg(long)]
    pub emit_polys: bool,
}

#[derive(Args, Debug)]
pub struct IsotropyArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long, default_value = "Qi")]
    pub field: String,
    #[arg(long)]
    pub matrix_a: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub m_max: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct RodriguesArgs {
    /// `hermite`, `laguerre:1/2`, `jacobi:a,b`, `gegenbauer:l`, `ball:mu`,
    /// `simplex:k1,..,kn+1`, or a product such as `hermite*laguerre:1/2`.
    #[arg(long)]
    pub family: String,
    /// Variables for the ball and simplex families.
    #[arg(long, default_value_t = 1)]
    pub nvars: usize,
    #[arg(long, default_value_t = 4)]
    pub upto: u32,
    #[arg(long)]
    pub orthogonality: bool,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub hn: bool,
    #[arg(long, default_value_t = 3)]
    pub nvars: usize,
    #[arg(long, default_value_t = 4)]
    pub degree: u32,
    /// Number of frame vectors.
    #[arg(long, default_value_t = 2)]
    pub frame: usize,
    #[arg(long, value_enum, default_value = "orthogonal")]
    pub shape: Shape,
    #[arg(long)]
    pub matrix_a: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Orthogonal,
    Tangent,
    RandomRetry,
}

impl From<Shape> for FrameShape {
    fn from(s: Shape) -> Self {
        match s {
            Shape::Orthogonal => FrameShape::Orthogonal,
            Shape::Tangent => FrameShape::Tangent,
            Shape::RandomRetry => FrameShape::RandomRetry,
        }
    }
}

/// Result of one command: JSON records, table lines and the exit code.
pub struct Outcome {
    pub code: i32,
    pub records: Vec<Value>,
    pub table: Vec<String>,
}

#[derive(Serialize)]
struct Record<'a> {
    manifest: &'a RunManifest,
    report: &'a Value,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code with everything that should go to stdout.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    if let Some(t) = cli.common.threads {
        // fails only when the global pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let start = Instant::now();
    let name = command_name(&cli.command);
    let mut manifest = RunManifest::new(name, &echo);
    match commands::dispatch(&cli, &mut manifest) {
        Ok(out) => {
            if cli.common.timing {
                manifest.timing_ms = Some(start.elapsed().as_millis());
            }
            let text = if cli.common.pretty {
                out.table.join("\n")
            } else {
                out.records
                    .iter()
                    .map(|r| {
                        serde_json::to_string(&Record {
                            manifest: &manifest,
                            report: r,
                        })
                        .expect("serializable")
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            (out.code, text)
        }
        Err(e) => (2, error_json(&e)),
    }
}

fn error_json(e: &Error) -> String {
    let mut v = serde_json::json!({ "error": e.to_string() });
    if let Error::Descriptor { path, .. } = e {
        v["path"] = Value::String(path.clone());
    }
    v.to_string()
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::Vc(_) => "vc",
        Command::Laurent(_) => "laurent",
        Command::Deform(_) => "deform",
        Command::Isotropy(_) => "isotropy",
        Command::Rodrigues(_) => "rodrigues",
        Command::Gen(_) => "gen",
    }
}

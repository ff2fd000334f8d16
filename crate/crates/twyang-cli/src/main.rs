//! `twyang`: exact verification, module construction and highest-weight
//! classification for twisted Yangians of types B, C and D.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use twyang::classify::{classify, mu_factorize_b0, FiniteDim, Verdict, WeightTuple, DEFAULT_DEG_MAX};
use twyang::exact::{parse_rat, Rat, RatFunc};
use twyang::io::{from_json, to_json};
use twyang::reps::lie::sp2_module;
use twyang::reps::*;
use twyang::rk::{
    build_k_oneparam, build_r, build_r_struct, check_re, check_symmetry, check_ybe, kappa, verify_kmatrix, IdentityReport,
    PairTag, PairType, RFamily, RStruct,
};
use twyang::tensor::Family;
use twyang::TwError;

#[derive(Parser)]
#[command(name = "twyang", version, about = "Exact twisted-Yangian computations")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Degree cap for Drinfeld-polynomial searches.
    #[arg(long, global = true, default_value_t = DEFAULT_DEG_MAX)]
    deg_max: usize,
    /// Truncation order of power series in `1/u`.
    #[arg(long, global = true, env = "TWYANG_TRUNC_ORDER", default_value_t = 12)]
    order: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the defining identities of an R-matrix, a K-matrix or a module.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Decide non-triviality and finite-dimensionality of a highest weight.
    Classify(ClassifyArgs),
    /// Construct a module, verify it and write it as JSON.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Yang-Baxter equation for `R(u)`.
    Rmatrix {
        /// `glN`, `gN`/`soN` (orthogonal) or `spN` (symplectic).
        #[arg(long)]
        family: String,
        #[arg(long = "N")]
        big_n: usize,
        /// Replace `κ` by `κ + δ` (a negative control).
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        perturb_kappa: Option<Rat>,
    },
    /// Reflection equation, unitarity, symmetry and the `p` identity for `G(u)`.
    Kmatrix {
        #[command(flatten)]
        pair: PairArgs,
        /// Check `G + a/u` instead (CI and DIII).
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        a: Option<Rat>,
    },
    /// Every relation of a module file.
    Module {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    /// Weight file: `{"pair": "B0", "N": 3, "mu": [...]}`.
    #[arg(long = "in", conflicts_with = "module", required_unless_present = "module")]
    input: Option<PathBuf>,
    /// Classify the highest weight extracted from a module file instead.
    #[arg(long)]
    module: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct PairArgs {
    #[arg(long)]
    pair: String,
    #[arg(long = "N")]
    big_n: usize,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
}

impl PairArgs {
    fn build(&self) -> Result<PairType, TwError> {
        PairType::new(self.pair.parse()?, self.big_n, self.p, self.q)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Orthogonal,
    Symplectic,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Orthogonal => Family::Orthogonal,
            FamilyArg::Symplectic => Family::Symplectic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RestrictOp {
    Vplus,
    Vj,
}

#[derive(Subcommand)]
enum BuildKind {
    /// Evaluation module: B0 (`so₃`), C0/CI (`sp₂`), D0/DIII (`so₄`, needs `--mu2`).
    Eval {
        #[arg(long)]
        pair: String,
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        mu: Rat,
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        mu2: Option<Rat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One-dimensional module `G(u)`, or `G + a/u` for CI/DIII.
    Onedim {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        a: Option<Rat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vector evaluation module `T(u) = R(u − a)` of the extended Yangian.
    Vector {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        a: Rat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// `W ⊗ V` for a vector module `W` and a twisted-Yangian module `V`.
    Tensor {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        v: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Module obtained from Olshanskii evaluation modules: B0 and C0 take an
    /// `sp₂` weight `mu`, CI an `so₂` weight, D0 and DIII two weights.
    Bridge {
        #[arg(long)]
        pair: String,
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        mu: Rat,
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        mu2: Option<Rat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Restriction to `V₊` (rank reduction) or to `Vᴶ` (reflection algebra).
    Restrict {
        #[arg(long, value_enum)]
        op: RestrictOp,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn rat(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Pass = 0,
    Fail = 1,
    Config = 2,
    Inconclusive = 3,
}

fn status_of(reports: &[IdentityReport]) -> Status {
    if reports.iter().all(|r| r.pass) {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Library errors: violated relations and hypotheses are failures, the rest
/// are configuration problems.
fn error_status(e: &anyhow::Error) -> Status {
    match e.downcast_ref::<TwError>() {
        Some(TwError::Relation(_) | TwError::Hypothesis(_)) => Status::Fail,
        _ => Status::Config,
    }
}

struct Ctx {
    json: bool,
    deg_max: usize,
    order: usize,
}

impl Ctx {
    fn print_reports(&self, title: &str, reports: &[IdentityReport], extra: serde_json::Value) {
        if self.json {
            let mut v = json!({ "target": title, "pass": reports.iter().all(|r| r.pass), "reports": reports });
            if let (Some(o), serde_json::Value::Object(e)) = (v.as_object_mut(), extra) {
                o.extend(e);
            }
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        } else {
            println!("{title}");
            for r in reports {
                println!("  {r}");
            }
            if let serde_json::Value::Object(e) = extra {
                for (k, v) in e {
                    println!("  {k} = {}", v.as_str().map(str::to_owned).unwrap_or_else(|| v.to_string()));
                }
            }
        }
    }
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let s = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(from_json(&s)?)
}

fn parse_family(s: &str) -> Result<RFamily, TwError> {
    let t = s.trim().trim_end_matches(|c: char| c == 'N' || c.is_ascii_digit()).to_ascii_lowercase();
    match t.as_str() {
        "gl" => Ok(RFamily::Gl),
        "g" | "so" | "o" | "orthogonal" => Ok(RFamily::G(Family::Orthogonal)),
        "sp" | "symplectic" => Ok(RFamily::G(Family::Symplectic)),
        _ => Err(TwError::Config(format!("unknown family {s:?}; use glN, gN, soN or spN"))),
    }
}

fn verify(ctx: &Ctx, target: &VerifyTarget) -> anyhow::Result<Status> {
    match target {
        VerifyTarget::Rmatrix { family, big_n, perturb_kappa } => {
            let fam = parse_family(family)?;
            let r = match (fam, perturb_kappa) {
                (_, None) => build_r(*big_n, fam)?,
                (RFamily::G(f), Some(d)) => {
                    let st = build_r_struct(*big_n, fam)?;
                    RStruct::g_with_kappa(st.idx, f, &(kappa(*big_n, f) + d)).to_matrix()?
                }
                (RFamily::Gl, Some(_)) => return Err(TwError::Config("--perturb-kappa needs a g_N family".into()).into()),
            };
            let reps = vec![check_ybe(&r)?];
            ctx.print_reports(&format!("R-matrix {family}, N = {big_n}"), &reps, json!({}));
            Ok(status_of(&reps))
        }
        VerifyTarget::Kmatrix { pair, a } => {
            let pt = pair.build()?;
            let reps = match a {
                None => verify_kmatrix(&pt)?,
                Some(a) => {
                    let k = build_k_oneparam(&pt, a)?;
                    let r = build_r(pt.big_n, RFamily::G(pt.family()))?;
                    let mut v = vec![check_re(&r, &k)?];
                    v.extend(check_symmetry(&k, &pt, Some(a))?);
                    v
                }
            };
            ctx.print_reports(&format!("K-matrix {pt}"), &reps, json!({}));
            Ok(status_of(&reps))
        }
        VerifyTarget::Module { input } => {
            let m: TwistedModule = read(input)?;
            let rep = verify_twisted(&m)?;
            let extra = match &rep.w {
                Some(w) => json!({ "w": w.to_string() }),
                None => json!({}),
            };
            ctx.print_reports(&format!("module {} ({}, dim {})", m.note, m.pair, m.dim), &rep.reports, extra);
            Ok(status_of(&rep.reports))
        }
    }
}

#[derive(Deserialize)]
struct WeightFile {
    pair: String,
    #[serde(rename = "N")]
    big_n: usize,
    p: Option<usize>,
    q: Option<usize>,
    mu: Vec<RatFunc>,
}

#[derive(Serialize)]
struct ClassifyOut<'a> {
    #[serde(flatten)]
    verdict: &'a Verdict,
    /// `μ°(u)` through the truncation order, for finite-dimensional `so₃` weights.
    #[serde(skip_serializing_if = "Option::is_none")]
    mu_circ: Option<Vec<String>>,
}

fn classify_cmd(ctx: &Ctx, args: &ClassifyArgs) -> anyhow::Result<Status> {
    let w = if let Some(path) = &args.input {
        let f: WeightFile = read(path)?;
        let pair = PairType::new(f.pair.parse()?, f.big_n, f.p, f.q)?;
        WeightTuple::new(pair, f.mu)?
    } else {
        let m: TwistedModule = read(args.module.as_ref().expect("clap enforces one input"))?;
        let hw = highest_weight_extract(&m)?;
        WeightTuple::new(m.pair, hw.weight(&m.pair))?
    };
    let v = classify(&w, ctx.deg_max);
    let mu_circ = (v.pair.tag == PairTag::B0 && v.pair.big_n == 3 && v.finite_dim == FiniteDim::Yes)
        .then(|| mu_factorize_b0(&w.mu[0], &w.mu[1], ctx.order))
        .transpose()?
        .map(|s| s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    if ctx.json {
        println!("{}", to_json(&ClassifyOut { verdict: &v, mu_circ: mu_circ.clone() }));
    } else {
        println!("pair {}", v.pair);
        println!("nontrivial: {}", v.nontrivial);
        println!("finite-dimensional: {}", finite_dim_text(&v.finite_dim));
        if let Some(c) = &v.certificate {
            for (k, p) in c.polys.iter().enumerate() {
                println!("  P_{}(u) = {p}", k + 1);
            }
            if let Some(g) = &c.gamma {
                println!("  gamma = {g}");
            }
        }
        if let Some(s) = &mu_circ {
            println!("  mu_circ coefficients of u^0..u^-{}: [{}]", ctx.order, s.join(", "));
        }
        for r in &v.diagnostics {
            println!("  {r}");
        }
    }
    Ok(match v.finite_dim {
        FiniteDim::Yes | FiniteDim::NecessaryOnly { pass: true } => Status::Pass,
        FiniteDim::Inconclusive => Status::Inconclusive,
        _ => Status::Fail,
    })
}

fn finite_dim_text(f: &FiniteDim) -> &'static str {
    match f {
        FiniteDim::Yes => "yes",
        FiniteDim::No => "no",
        FiniteDim::Inconclusive => "inconclusive",
        FiniteDim::NecessaryOnly { pass: true } => "necessary conditions hold (sufficiency unknown)",
        FiniteDim::NecessaryOnly { pass: false } => "no (a necessary condition fails)",
        FiniteDim::Undefined => "undefined (trivial Verma module)",
    }
}

fn need_mu2(pair: PairTag, mu2: &Option<Rat>) -> Result<Rat, TwError> {
    mu2.clone().ok_or_else(|| TwError::Config(format!("{pair} needs --mu2")))
}

fn eval_module(pair: &str, mu: &Rat, mu2: &Option<Rat>) -> Result<TwistedModule, TwError> {
    let tag: PairTag = pair.parse()?;
    match tag {
        PairTag::B0 => eval_so3(mu),
        PairTag::C0 => eval_sp2(Sp2Variant::C0, mu),
        PairTag::CI => eval_sp2(Sp2Variant::CI, mu),
        PairTag::D0 => eval_so4(So4Variant::D0, mu, &need_mu2(tag, mu2)?),
        PairTag::DIII => eval_so4(So4Variant::DIII, mu, &need_mu2(tag, mu2)?),
        _ => Err(TwError::Unsupported(format!("no evaluation module for {tag}"))),
    }
}

fn bridge_module(pair: &str, mu: &Rat, mu2: &Option<Rat>) -> Result<TwistedModule, TwError> {
    let tag: PairTag = pair.parse()?;
    let minus = |m: &Rat| olshanskii_eval(-1, &OlshanskiiLie::Sp2(sp2_module(m)?));
    match tag {
        PairTag::B0 => bridge_so3(&minus(mu)?),
        PairTag::C0 => bridge_sp2(Sp2Variant::C0, &minus(mu)?),
        PairTag::CI => bridge_sp2(Sp2Variant::CI, &olshanskii_eval(1, &OlshanskiiLie::So2(mu.clone()))?),
        PairTag::D0 => bridge_so4(&minus(mu)?, &minus(&need_mu2(tag, mu2)?)?),
        PairTag::DIII => {
            let circ = olshanskii_eval(1, &OlshanskiiLie::So2(mu.clone()))?;
            bridge_so4(&circ, &minus(&need_mu2(tag, mu2)?)?)
        }
        _ => Err(TwError::Unsupported(format!("no bridge for {tag}"))),
    }
}

/// Writes `json` to `out`, or to stdout when `out` is absent (the report then
/// goes to stderr so that stdout stays parseable).
fn emit(ctx: &Ctx, title: &str, reports: &[IdentityReport], json_text: String, out: &Option<PathBuf>) -> anyhow::Result<Status> {
    let st = status_of(reports);
    match out {
        Some(p) => {
            if st == Status::Pass {
                fs::write(p, json_text).with_context(|| format!("writing {}", p.display()))?;
            }
            ctx.print_reports(title, reports, json!({ "written": st == Status::Pass, "path": p.display().to_string() }));
        }
        None => {
            for r in reports {
                eprintln!("{r}");
            }
            if st == Status::Pass {
                println!("{json_text}");
            }
        }
    }
    Ok(st)
}

fn emit_twisted(ctx: &Ctx, m: &TwistedModule, out: &Option<PathBuf>) -> anyhow::Result<Status> {
    let rep = verify_twisted(m)?;
    let title = format!("module {} ({}, dim {})", m.note, m.pair, m.dim);
    emit(ctx, &title, &rep.reports, to_json(m), out)
}

fn build(ctx: &Ctx, kind: &BuildKind) -> anyhow::Result<Status> {
    match kind {
        BuildKind::Eval { pair, mu, mu2, out } => emit_twisted(ctx, &eval_module(pair, mu, mu2)?, out),
        BuildKind::Onedim { pair, a, out } => emit_twisted(ctx, &onedim_module(&pair.build()?, a.as_ref())?, out),
        BuildKind::Vector { big_n, family, a, out } => {
            let x = vector_eval_x(*big_n, (*family).into(), a)?;
            let rep = verify_x(&x);
            emit(ctx, &format!("vector module N = {big_n}, a = {a}"), &[rep], to_json(&x), out)
        }
        BuildKind::Tensor { x, v, out } => {
            let x: XModule = read(x)?;
            let v: TwistedModule = read(v)?;
            emit_twisted(ctx, &tensor_twisted(&x, &v)?, out)
        }
        BuildKind::Bridge { pair, mu, mu2, out } => emit_twisted(ctx, &bridge_module(pair, mu, mu2)?, out),
        BuildKind::Restrict { op, input, out } => {
            let m: TwistedModule = read(input)?;
            match op {
                RestrictOp::Vplus => emit_twisted(ctx, &restrict_vplus(&m)?, out),
                RestrictOp::Vj => {
                    if out.is_some() {
                        return Err(TwError::Unsupported("reflection-algebra modules are reported, not written".into()).into());
                    }
                    let (bm, reports, f) = restrict_vj(&m)?;
                    let extra = match f {
                        Some(f) => json!({ "dim": bm.dim, "scalar": f.to_string() }),
                        None => json!({ "dim": bm.dim }),
                    };
                    ctx.print_reports(&format!("V^J of {}", m.note), &reports, extra);
                    Ok(status_of(&reports))
                }
            }
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Status> {
    let ctx = Ctx {
        json: cli.json,
        deg_max: cli.deg_max,
        order: cli.order,
    };
    match &cli.cmd {
        Cmd::Verify { target } => verify(&ctx, target),
        Cmd::Classify(args) => classify_cmd(&ctx, args),
        Cmd::Build { kind } => build(&ctx, kind),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { Status::Config } else { Status::Pass };
            return ExitCode::from(code as u8);
        }
    };
    let st = run(&cli).unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        error_status(&e)
    });
    ExitCode::from(st as u8)
}

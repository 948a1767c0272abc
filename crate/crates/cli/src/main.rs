//! `lrc`: command-line front end for analyzing, constructing, bounding and
//! searching linear codes with small locality, and for re-verifying the
//! bundled table of known values.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lrc_core::bounds::{
    cm_bound_griesmer, default_lambda, griesmer, min_length_no_distance, singleton_locality_bound,
};
use lrc_core::code::{macwilliams_transform, LinearCode};
use lrc_core::constructions::Construction;
use lrc_core::error::Error;
use lrc_core::geometry::{Geometry, MultisetFile, PointEncoding};
use lrc_core::ilp::{build_model_r1, build_model_r2, solve_min_length, SolveOptions};
use lrc_core::locality::{dual_minimum_distance, locality};
use lrc_core::registry::{Assets, Filter, Kind, Registry, VerifyOptions};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "lrc", version, about = "Linear codes with small locality over small fields")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Registry asset directory replacing the embedded data.
    #[arg(long, global = true, env = "LRC_ASSET_DIR", value_name = "DIR")]
    assets: Option<PathBuf>,

    /// Search budget per length, in seconds.
    #[arg(long, global = true, default_value_t = 300, value_parser = clap::value_parser!(u64).range(1..))]
    timeout: u64,

    /// Worker threads for verification.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    /// Largest projective geometry (in points) the search accepts.
    #[arg(long, global = true, default_value_t = 63, value_parser = clap::value_parser!(u64).range(1..))]
    max_points: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parameters, locality and bound slack of a generator matrix or multiset file.
    Analyze {
        /// Matrix text file (`q k n` header and rows) or multiset JSON.
        file: PathBuf,
    },
    /// Build a named construction and compare predicted with measured parameters.
    Construct(ConstructArgs),
    /// Lower bounds on the length for the given parameters.
    Bound(Params),
    /// Export the integer program or solve for the optimum length.
    Ilp(IlpArgs),
    /// Re-verify the bundled table of known values and witnesses.
    VerifyPaper {
        /// Record selector such as `q=2,k=3`, `matrices` or `kind=lower_bound`.
        #[arg(long, default_value = "")]
        filter: String,
    },
}

#[derive(Args, Debug)]
struct Params {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    r: usize,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Construction name (`simplex`, `ss`, `rm`, `line`, `cycle-d3`, `d4`,
    /// `small-opt`, `small-dim`, `r1-double`, `r1-ambient`, `r1-triple`) or a
    /// full specification such as `line(rm:m=3)`.
    name: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    r: Option<usize>,
    /// Solomon-Stiffler type `sigma:eps_0,...,eps_{k-1}`.
    #[arg(long = "type", value_name = "TYPE")]
    ty: Option<String>,
    /// Inner construction for `line` and the `r1-*` derivations.
    #[arg(long)]
    inner: Option<String>,
    /// Write the generator matrix here instead of printing it.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ConstructArgs {
    fn spec(&self) -> anyhow::Result<String> {
        if self.name.contains([':', '(']) {
            return Ok(self.name.clone());
        }
        if matches!(self.name.as_str(), "line" | "r1-double" | "r1-ambient" | "r1-triple") {
            let inner = self.inner.as_deref().context("this construction needs --inner")?;
            return Ok(format!("{}({inner})", self.name));
        }
        let mut kv = Vec::new();
        let nums = [
            ("k", self.k.map(|x| x as u64)),
            ("q", self.q.map(u64::from)),
            ("t", self.t.map(u64::from)),
            ("m", self.m.map(|x| x as u64)),
            ("d", self.d),
            ("r", self.r.map(|x| x as u64)),
        ];
        for (key, v) in nums {
            if let Some(v) = v {
                kv.push(format!("{key}={v}"));
            }
        }
        // type goes last: its value contains commas
        if let Some(ty) = &self.ty {
            kv.push(format!("type={ty}"));
        }
        Ok(format!("{}:{}", self.name, kv.join(",")))
    }
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("action").required(true).args(["export", "solve"])))]
struct IlpArgs {
    #[command(flatten)]
    params: Params,
    /// Write the model in LP format.
    #[arg(long, value_name = "FILE")]
    export: Option<PathBuf>,
    /// Fix the length, turning the model into a feasibility question.
    #[arg(long, requires = "export")]
    fix_n: Option<u64>,
    /// Multiplicity cap; defaults to a value that keeps every optimum.
    #[arg(long)]
    lambda: Option<u64>,
    /// Solve for the optimum length.
    #[arg(long)]
    solve: bool,
    /// Write the optimal multiset here.
    #[arg(long, requires = "solve")]
    out: Option<PathBuf>,
}

struct Ctx {
    json: bool,
    assets: Option<PathBuf>,
    solver: SolveOptions,
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let ctx = Ctx {
        json: cli.json,
        assets: cli.assets,
        solver: SolveOptions {
            timeout: Some(Duration::from_secs(cli.timeout)),
            max_points: cli.max_points as usize,
            ..SolveOptions::default()
        },
        threads: cli.threads.map(|t| t as usize),
    };
    let res = match cli.command {
        Command::Analyze { file } => analyze(&ctx, &file),
        Command::Construct(args) => construct(&ctx, &args),
        Command::Bound(p) => bound(&ctx, &p),
        Command::Ilp(args) => ilp(&ctx, &args),
        Command::VerifyPaper { filter } => verify(&ctx, &filter),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Timeout { .. } | Error::SizeCap { .. }) => EXIT_CAP,
        Some(Error::VerificationFailed(_) | Error::DataCorrupt(_)) => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

fn emit(ctx: &Ctx, value: &Value, text: &str) {
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(value).expect("json output"));
    } else {
        print!("{text}");
    }
}

fn load_registry(ctx: &Ctx) -> anyhow::Result<Registry> {
    let assets = match &ctx.assets {
        Some(dir) => Assets::from_dir(dir)?,
        None => Assets::embedded(),
    };
    Ok(Registry::from_assets(&assets)?)
}

fn read_code(path: &Path) -> anyhow::Result<LinearCode> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        Ok(LinearCode::from_multiset(&MultisetFile::parse(&text)?.decode()?)?)
    } else {
        Ok(LinearCode::parse(&text)?)
    }
}

fn fmt_r(r: Option<usize>) -> String {
    r.map_or("infinite".into(), |r| r.to_string())
}

fn analyze(ctx: &Ctx, path: &Path) -> anyhow::Result<u8> {
    let code = read_code(path)?;
    let (q, k, n) = (code.q(), code.k(), code.n());
    let wd = code.weight_distribution()?;
    let d = wd.minimum_distance().context("code has no nonzero codeword")?;
    let weights = wd.nonzero_weights();
    let dual_d = if k == n {
        None
    } else {
        match macwilliams_transform(&wd, n, k, q) {
            Ok(dual) => dual.minimum_distance(),
            Err(_) => dual_minimum_distance(&code),
        }
    };
    let loc = locality(&code);
    loc.certificate.check(&code)?;
    let projective = code.is_projective();
    let g = griesmer(k, d as u64, q);
    let slack = loc
        .r
        .filter(|&r| r <= k)
        .map(|r| singleton_locality_bound(n as u64, k, r).map(|b| b - d as i64))
        .transpose()?;
    let mut tags = vec![format!("d={d}"), format!("locality={}", fmt_r(loc.r))];
    if weights.len() == 2 {
        tags.push("two-weight".into());
    }
    if projective {
        tags.push("projective".into());
    }
    if loc.degenerate {
        tags.push("degenerate".into());
    }
    let covered = loc.certificate.recovery.len();
    let largest = loc.certificate.recovery.iter().map(|r| r.set.len()).max().unwrap_or(0);
    let mut text = format!("{}\n", tags.join(", "));
    text += &format!("[{n}, {k}, {d}]_{q}\n");
    text += &format!("weights: {}\n", weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" "));
    text += &format!("dual distance: {}\n", dual_d.map_or("none".into(), |x| x.to_string()));
    text += &format!(
        "locality: {} (recovery sets for {covered} of {n} coordinates, largest {largest})\n",
        fmt_r(loc.r)
    );
    text += &format!("projective: {projective}, degenerate: {}\n", loc.degenerate);
    text += &format!("griesmer gap: {n} - {g} = {}\n", n as u64 - g);
    text += &format!("singleton slack: {}\n", slack.map_or("n/a".into(), |s| s.to_string()));
    let value = json!({
        "q": q, "n": n, "k": k, "d": d,
        "weights": weights,
        "dual_distance": dual_d,
        "locality": loc.r,
        "per_coordinate": loc.per_coordinate,
        "recovery_sets": covered,
        "projective": projective,
        "degenerate": loc.degenerate,
        "two_weight": weights.len() == 2,
        "griesmer": g,
        "griesmer_gap": n as u64 - g,
        "singleton_slack": slack,
    });
    emit(ctx, &value, &text);
    Ok(0)
}

fn construct(ctx: &Ctx, args: &ConstructArgs) -> anyhow::Result<u8> {
    let spec = args.spec()?;
    let c: Construction = spec.parse()?;
    let predicted = c.predicted()?;
    let m = c.build()?;
    let code = LinearCode::from_multiset(&m)?;
    let d = m.minimum_distance();
    let r = locality(&code).r;
    let matrix = code.to_text();
    let mut text = format!("{c}\n");
    text += &format!(
        "predicted: n={} k={} d>={} r<={}\n",
        predicted.n,
        predicted.k,
        predicted.d,
        fmt_r(predicted.r)
    );
    text += &format!("measured:  [{}, {}, {d}]_{} locality {}\n", code.n(), code.k(), code.q(), fmt_r(r));
    match &args.out {
        Some(path) => {
            fs::write(path, &matrix).with_context(|| format!("cannot write {}", path.display()))?;
            text += &format!("matrix written to {}\n", path.display());
        }
        None if !ctx.json => text += &matrix,
        None => {}
    }
    let ok = code.n() as u64 == predicted.n
        && code.k() == predicted.k
        && d >= predicted.d
        && predicted.r.is_none_or(|pr| r.is_some_and(|x| x <= pr));
    let value = json!({
        "construction": c.to_string(),
        "predicted": predicted,
        "measured": { "n": code.n(), "k": code.k(), "d": d, "r": r },
        "consistent": ok,
        "matrix": matrix,
    });
    emit(ctx, &value, &text);
    Ok(if ok { 0 } else { EXIT_VERIFY })
}

fn bound(ctx: &Ctx, p: &Params) -> anyhow::Result<u8> {
    if p.r == 0 || p.k == 0 || p.d == 0 {
        bail!("q, k, d and r must be positive");
    }
    let g = griesmer(p.k, p.d, p.q);
    let singleton = p.d + p.k as u64 + p.k.div_ceil(p.r) as u64 - 2;
    let mut cm = p.d;
    while cm_bound_griesmer(cm, p.d, p.r, p.q) < p.k {
        cm += 1;
    }
    let no_distance = min_length_no_distance(p.k, p.r).ok().map(|x| x as u64);
    let lower = [g, singleton, cm, no_distance.unwrap_or(0)].into_iter().max().unwrap();
    let reg = load_registry(ctx)?;
    let records: Vec<_> = reg.lookup(p.q, p.k, p.d, p.r).collect();
    let exact = reg.exact_value(p.q, p.k, p.d, p.r);
    let mut text = format!("griesmer {g}\n");
    text += &format!("singleton-type {singleton}\n");
    text += &format!("cm-type {cm}\n");
    if let Some(x) = no_distance {
        text += &format!("no-distance minimum {x}\n");
    }
    text += &format!("lower bound {lower}\n");
    match exact {
        Some(n) => text += &format!("registry exact {n}\n"),
        None => {
            for rec in records.iter().filter(|r| r.kind != Kind::Exact) {
                text += &format!("registry {} {}\n", rec.kind.name(), rec.n);
            }
            if records.is_empty() {
                text += "registry none\n";
            }
        }
    }
    let value = json!({
        "q": p.q, "k": p.k, "d": p.d, "r": p.r,
        "griesmer": g,
        "singleton": singleton,
        "cm": cm,
        "no_distance": no_distance,
        "lower": lower,
        "registry_exact": exact,
        "registry": records.iter().map(|r| json!({"id": r.id, "kind": r.kind, "n": r.n})).collect::<Vec<_>>(),
    });
    emit(ctx, &value, &text);
    Ok(0)
}

fn ilp(ctx: &Ctx, args: &IlpArgs) -> anyhow::Result<u8> {
    let p = &args.params;
    let geo = Geometry::shared(p.q, p.k)?;
    if let Some(path) = &args.export {
        let lambda = args.lambda.unwrap_or_else(|| default_lambda(p.k, p.d, p.q));
        let mut model = match p.r {
            1 => build_model_r1(&geo, p.d, lambda)?,
            2 => build_model_r2(&geo, p.d, lambda)?,
            r => return Err(Error::BadR { r, reason: "models exist for r in {1, 2}".into() }.into()),
        };
        model.fixed_n = args.fix_n;
        fs::write(path, model.to_lp()).with_context(|| format!("cannot write {}", path.display()))?;
        let census = model.census();
        let mut text = format!(
            "wrote {}: {} variables, {} constraints\n",
            path.display(),
            model.variables.len(),
            model.constraints.len()
        );
        for (family, count) in &census.families {
            text += &format!("  {family:<14} {count}\n");
        }
        let value = json!({
            "file": path,
            "variables": model.variables.len(),
            "constraints": model.constraints.len(),
            "lambda": lambda,
            "fixed_n": args.fix_n,
            "census": census.families.iter().map(|(f, c)| json!({"family": f, "count": c})).collect::<Vec<_>>(),
        });
        emit(ctx, &value, &text);
        return Ok(0);
    }
    let opts = SolveOptions { lambda: args.lambda, ..ctx.solver.clone() };
    let sol = solve_min_length(&geo, p.d, p.r, &opts)?;
    let encoding = if p.q == 2 { PointEncoding::Binary } else { PointEncoding::Lexindex };
    let file = sol.witness.to_file(encoding)?;
    let mut text = format!("n_opt {}\n", sol.n);
    text += &format!("searched lengths {}..={}\n", sol.start, sol.n);
    match &args.out {
        Some(path) => {
            fs::write(path, file.to_json()).with_context(|| format!("cannot write {}", path.display()))?;
            text += &format!("witness written to {}\n", path.display());
        }
        None => text += &format!("{}\n", file.to_json()),
    }
    let value = json!({
        "q": p.q, "k": p.k, "d": p.d, "r": p.r,
        "n_opt": sol.n,
        "start": sol.start,
        "witness": file,
    });
    emit(ctx, &value, &text);
    Ok(0)
}

fn verify(ctx: &Ctx, filter: &str) -> anyhow::Result<u8> {
    let reg = load_registry(ctx)?;
    let filter = Filter::parse(filter)?;
    let mut opts = VerifyOptions { solver: ctx.solver.clone(), ..VerifyOptions::default() };
    opts.solver.timeout = opts.solver.timeout.min(Some(Duration::from_secs(60)));
    if let Some(t) = ctx.threads {
        opts.threads = t;
    }
    let summary = reg.verify_all(&filter, &opts);
    if ctx.json {
        println!("{}", summary.to_json());
    } else {
        print!("{}", summary.to_table());
    }
    Ok(if summary.ok() { 0 } else { EXIT_VERIFY })
}

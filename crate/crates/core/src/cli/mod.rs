//! The `polyrook` command line.

pub mod document;
pub mod render;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::complex::{self, Facet};
use crate::correspondence;
use crate::error::{Budget, Error};
use crate::explorer::{self, SweepStatus};
use crate::families;
use crate::grid::Polyomino;
use crate::ideal;
use crate::rooks::{AttackPolicy, RookConfig};

use document::PolyominoDocument;
use render::Overlay;

pub const VERSION: &str = concat!("polyrook/", env!("CARGO_PKG_VERSION"));
pub const BUDGET_ENV: &str = "POLYROOK_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "polyrook", version, about = "Polyomino ideals, shellings and switching rook polynomials")]
pub struct Cli {
    /// Attack rule for rooks sharing a row or column.
    #[arg(long, global = true, value_enum, default_value_t = AttackPolicy::Coblock)]
    pub attack: AttackPolicy,
    /// Cap on any exhaustive enumeration; POLYROOK_BUDGET takes precedence.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.0)]
    pub budget: usize,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Steps,
    Shelling,
    Fvector,
    Hilbert,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertices, cells, holes, inner intervals, Gröbner status, frame data.
    Info { path: PathBuf },
    /// h-polynomial by one or all methods.
    Hvector {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Checks h = switching rook polynomial, and the facet/rook bijection on frames.
    Verify {
        path: PathBuf,
        /// Facet cache written by `facets --out`.
        #[arg(long)]
        facets: Option<PathBuf>,
    },
    /// Lists the facets in shelling order.
    Facets {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweeps small polyominoes or frames.
    Explore {
        #[arg(long, conflicts_with = "frames", required_unless_present = "frames")]
        max_rank: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        frames: Option<Vec<i32>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draws a polyomino with optional overlays.
    Render {
        path: PathBuf,
        #[arg(long)]
        facet: Option<PathBuf>,
        #[arg(long)]
        rooks: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failed command: exit status and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::TooLarge(_) => EXIT_BUDGET,
            Error::EmptyCellSet
            | Error::DisconnectedCells(..)
            | Error::InvalidPath(_)
            | Error::EndpointMismatch
            | Error::PathsCross
            | Error::EmptyRegion
            | Error::SpecViolation(_)
            | Error::CellNotInPolyomino(_)
            | Error::InvalidArgument(_)
            | Error::NotAFrame
            | Error::NotParallelogram => EXIT_INPUT,
            _ => EXIT_VERIFY,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

#[derive(Serialize)]
struct ReportLine<'a> {
    cmd: &'a str,
    digest: &'a str,
    payload: Value,
    version: &'a str,
}

fn report_line(cmd: &str, digest: &str, payload: Value) -> String {
    serde_json::to_string(&ReportLine { cmd, digest, payload, version: VERSION }).expect("report serializes")
}

/// SHA-256 of the sorted cell list as compact JSON.
pub fn digest(p: &Polyomino) -> String {
    let cells: Vec<_> = p.cells().iter().collect();
    hex::encode(Sha256::digest(serde_json::to_string(&cells).unwrap().as_bytes()))
}

fn digest_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Ctx {
    policy: AttackPolicy,
    budget: Budget,
    echo: String,
    out: String,
    /// Digest of the loaded polyomino, reused for error lines.
    digest: String,
}

impl Ctx {
    fn emit(&mut self, digest: &str, payload: Value) {
        let line = report_line(&self.echo, digest, payload);
        self.out.push_str(&line);
        self.out.push('\n');
    }

    fn load(&mut self, path: &Path) -> std::result::Result<Polyomino, Failure> {
        let p = load(path)?;
        self.digest = digest(&p);
        Ok(p)
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<Polyomino, Failure> {
    let doc = PolyominoDocument::parse(&read(path)?)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(doc.build()?)
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn poly_json(p: &crate::poly::IntPolynomial) -> Value {
    json!(p.coeffs())
}

fn echo(cli: &Cli, budget: Budget) -> String {
    let mut s = match &cli.command {
        Command::Info { .. } => "info".to_string(),
        Command::Hvector { method, .. } => format!("hvector --method {}", method.to_possible_value().unwrap().get_name()),
        Command::Verify { facets, .. } => {
            format!("verify{}", if facets.is_some() { " --facets" } else { "" })
        }
        Command::Facets { .. } => "facets".to_string(),
        Command::Explore { max_rank, frames, .. } => match (max_rank, frames) {
            (Some(r), _) => format!("explore --max-rank {r}"),
            (None, Some(f)) => format!("explore --frames {} {}", f[0], f[1]),
            _ => "explore".to_string(),
        },
        Command::Render { facet, rooks, format, .. } => {
            let mut s = format!("render --format {}", format.to_possible_value().unwrap().get_name());
            if facet.is_some() {
                s.push_str(" --facet");
            }
            if rooks.is_some() {
                s.push_str(" --rooks");
            }
            s
        }
    };
    let _ = write!(s, " --attack {} --budget {}", cli.attack.name(), budget.0);
    s
}

fn cmd_info(ctx: &mut Ctx, path: &Path) -> CmdResult {
    let p = ctx.load(path)?;
    let simplicity = p.classify_simplicity();
    let frame = p.frame().map(|s| {
        json!({"m": s.m, "n": s.n, "a0": s.a0(), "b0": s.b0(), "ak": s.ak(), "bk": s.bk(), "s1": s.s1, "s2": s.s2})
    });
    let payload = json!({
        "rank": p.rank(),
        "vertices": p.num_vertices(),
        "simple": simplicity.simple,
        "holes": simplicity.holes,
        "inner_intervals": p.inner_intervals().len(),
        "groebner": ideal::is_groebner(&p)?,
        "parallelogram": families::is_parallelogram(&p),
        "frame": frame,
    });
    ctx.emit(&digest(&p), payload);
    Ok(EXIT_OK)
}

fn cmd_hvector(ctx: &mut Ctx, path: &Path, method: Method) -> CmdResult {
    let p = ctx.load(path)?;
    let budget = ctx.budget;
    let fs = complex::facets(&p, budget)?;
    let dim = fs.iter().map(Facet::len).max().unwrap_or(0);
    let h_steps = complex::h_from_steps(&p, budget)?;
    let mut payload = serde_json::Map::new();
    let wanted = |m: Method| method == m || method == Method::All;
    let mut values = Vec::new();
    if wanted(Method::Steps) {
        payload.insert("steps".into(), poly_json(&h_steps));
        values.push(h_steps.clone());
    }
    if wanted(Method::Shelling) {
        let r = complex::shelling_verify(&p, budget)?;
        payload.insert("shelling".into(), poly_json(&r.h_shelling));
        values.push(r.h_shelling);
    }
    if wanted(Method::Fvector) {
        let h = complex::h_from_f(&complex::f_vector(&p, budget)?, dim)?;
        payload.insert("fvector".into(), poly_json(&h));
        values.push(h);
    }
    if wanted(Method::Hilbert) {
        let maxdeg = h_steps.degree().unwrap_or(0) + 3;
        let h = ideal::h_from_hilbert(&p, dim, maxdeg, budget)?;
        payload.insert("hilbert".into(), poly_json(&h));
        values.push(h);
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    if method == Method::All {
        payload.insert("agree".into(), json!(agree));
    }
    payload.insert("dim".into(), json!(dim));
    ctx.emit(&digest(&p), Value::Object(payload));
    Ok(if agree { EXIT_OK } else { EXIT_VERIFY })
}

#[derive(Debug, Serialize, serde::Deserialize)]
struct FacetCache {
    digest: String,
    facets: Vec<Facet>,
}

fn cmd_facets(ctx: &mut Ctx, path: &Path, out: Option<&Path>) -> CmdResult {
    let p = ctx.load(path)?;
    let fs = complex::facets(&p, ctx.budget)?;
    let d = digest(&p);
    if let Some(out) = out {
        let cache = FacetCache { digest: d.clone(), facets: fs.clone() };
        write(out, &(serde_json::to_string(&cache).unwrap() + "\n"))?;
        ctx.emit(&d, json!({"count": fs.len()}));
    } else {
        ctx.emit(&d, json!({"count": fs.len(), "facets": fs}));
    }
    Ok(EXIT_OK)
}

fn cmd_verify(ctx: &mut Ctx, path: &Path, cache: Option<&Path>) -> CmdResult {
    let p = ctx.load(path)?;
    let d = digest(&p);
    let fs = match cache {
        None => complex::facets(&p, ctx.budget)?,
        Some(c) => {
            let cache: FacetCache = parse_json(c)?;
            let problem = if cache.digest != d {
                Some("facet cache belongs to a different polyomino".to_string())
            } else {
                let mut seen = std::collections::HashSet::new();
                let mut problem = None;
                for (t, f) in cache.facets.iter().enumerate() {
                    if !complex::is_facet(&p, f)? || !seen.insert(f.clone()) {
                        problem = Some(format!("facet cache entry {t} is not a distinct facet"));
                        break;
                    }
                }
                problem
            };
            if let Some(msg) = problem {
                ctx.emit(&d, json!({"ok": false, "error": msg}));
                return Ok(EXIT_VERIFY);
            }
            cache.facets
        }
    };
    let report = correspondence::verify_main_theorem_with(&p, &fs, ctx.policy, ctx.budget)?;
    let mut ok = report.all_true();
    let bijection = if p.frame().is_some() {
        let b = correspondence::verify_bijection_with(&p, &fs, ctx.budget)?;
        ok &= b.bijective;
        Some(b)
    } else {
        None
    };
    ctx.emit(&d, json!({"ok": ok, "theorem": report, "bijection": bijection}));
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

fn cmd_explore(ctx: &mut Ctx, max_rank: Option<usize>, frames: Option<&[i32]>, out: Option<&Path>) -> CmdResult {
    let polys = match (max_rank, frames) {
        (Some(r), _) => {
            if r == 0 {
                return Err(Failure::input("--max-rank must be at least 1"));
            }
            explorer::enumerate_fixed_polyominoes(r, ctx.budget)?
        }
        (None, Some(&[m, n])) => explorer::enumerate_small_frames(m, n),
        _ => return Err(Failure::input("give --max-rank N or --frames M N")),
    };
    let records = explorer::conjecture_sweep(&polys, ctx.policy, ctx.budget);
    let mut lines = String::new();
    for (p, r) in polys.iter().zip(&records) {
        lines.push_str(&report_line(&ctx.echo, &digest(p), serde_json::to_value(r).unwrap()));
        lines.push('\n');
    }
    let frame_mismatch = polys
        .iter()
        .zip(&records)
        .any(|(p, r)| p.frame().is_some() && r.status == SweepStatus::Mismatch);
    let summary = explorer::summarize(&records);
    let count = |s: SweepStatus| summary.get(&s).copied().unwrap_or(0);
    let payload = json!({
        "records": records.len(),
        "match": count(SweepStatus::Match),
        "mismatch": count(SweepStatus::Mismatch),
        "skipped_groebner": count(SweepStatus::SkippedGroebner),
        "skipped_budget": count(SweepStatus::SkippedBudget),
    });
    let d = digest_bytes(lines.as_bytes());
    match out {
        Some(path) => write(path, &lines)?,
        None => ctx.out.push_str(&lines),
    }
    ctx.emit(&d, payload);
    Ok(if frame_mismatch { EXIT_VERIFY } else { EXIT_OK })
}

fn cmd_render(
    ctx: &mut Ctx,
    path: &Path,
    facet: Option<&Path>,
    rooks: Option<&Path>,
    format: Format,
    out: Option<&Path>,
) -> CmdResult {
    let p = ctx.load(path)?;
    let overlay = Overlay {
        facet: facet.map(parse_json::<Facet>).transpose()?,
        rooks: rooks.map(parse_json::<RookConfig>).transpose()?,
    };
    let drawing = match format {
        Format::Ascii => render::render_ascii(&p, &overlay),
        Format::Svg => render::render_svg(&p, &overlay),
    }
    .map_err(|e| Failure::input(format!("overlay out of range: {}", e.0)))?;
    match out {
        Some(path) => {
            write(path, &drawing)?;
            ctx.emit(&digest(&p), json!({"bytes": drawing.len(), "sha256": digest_bytes(drawing.as_bytes())}));
        }
        None => ctx.out.push_str(&drawing),
    }
    Ok(EXIT_OK)
}

/// Runs one command. Returns the exit status and everything meant for stdout.
pub fn execute(cli: &Cli, env_budget: Option<&str>) -> (i32, String) {
    let budget = match env_budget.map(str::parse::<usize>) {
        None => Budget(cli.budget),
        Some(Ok(b)) => Budget(b),
        Some(Err(e)) => {
            let line = report_line("", "", json!({"error": format!("{BUDGET_ENV}: {e}")}));
            return (EXIT_INPUT, line + "\n");
        }
    };
    let mut ctx = Ctx { policy: cli.attack, budget, echo: echo(cli, budget), out: String::new(), digest: String::new() };
    let result = match &cli.command {
        Command::Info { path } => cmd_info(&mut ctx, path),
        Command::Hvector { path, method } => cmd_hvector(&mut ctx, path, *method),
        Command::Verify { path, facets } => cmd_verify(&mut ctx, path, facets.as_deref()),
        Command::Facets { path, out } => cmd_facets(&mut ctx, path, out.as_deref()),
        Command::Explore { max_rank, frames, out } => {
            cmd_explore(&mut ctx, *max_rank, frames.as_deref(), out.as_deref())
        }
        Command::Render { path, facet, rooks, format, out } => {
            cmd_render(&mut ctx, path, facet.as_deref(), rooks.as_deref(), *format, out.as_deref())
        }
    };
    match result {
        Ok(code) => (code, ctx.out),
        Err(f) => {
            let d = std::mem::take(&mut ctx.digest);
            ctx.emit(&d, json!({"error": f.message}));
            (f.code, ctx.out)
        }
    }
}

/// Entry point of the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let env_budget = std::env::var(BUDGET_ENV).ok();
    let job = || execute(&cli, env_budget.as_deref());
    let (code, out) = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(job),
            Err(e) => (EXIT_INPUT, format!("cannot start {n} worker threads: {e}\n")),
        },
        None => job(),
    };
    print!("{out}");
    code
}

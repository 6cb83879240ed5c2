//! `qg`: quantum binomials, single products, and verification suites.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on usage
//! or parameter errors.

mod grid;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgl::blmcore::AlgebraCtx;
use qgl::indices::MatIdx;
use qgl::qring::{gauss_binom, make_ring, qbinom_at_eps, BinomRoute, Generic, Ring, RingMode};

use grid::{run_suite, VerifyArgs};

#[derive(Parser)]
#[command(name = "qg", version, about = "Exact computations in quantum gl_n at roots of unity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quantum binomial [N over t], generic or at the root of unity e.
    Qb(QbArgs),
    /// One product of basis elements in a chosen algebra.
    Mult(MultArgs),
    /// Run a verification suite and report every check.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    CharP,
    CharZero,
}

impl From<Mode> for RingMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Auto => RingMode::Auto,
            Mode::CharP => RingMode::CharP,
            Mode::CharZero => RingMode::CharZero,
        }
    }
}

#[derive(Args)]
struct RingArgs {
    /// Order l' of e; omit for generic v.
    #[arg(long)]
    lprime: Option<u64>,
    /// Characteristic (0 for the cyclotomic field).
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    h: u32,
    #[arg(long, value_enum, default_value = "auto")]
    mode: Mode,
}

impl RingArgs {
    fn spec(&self) -> Result<Option<qgl::qring::RingSpec>, String> {
        match (self.lprime, self.p) {
            (None, None) => Ok(None),
            (Some(l), Some(p)) => make_ring(l, p, self.h, self.mode.into()).map(Some).map_err(|e| e.to_string()),
            _ => Err("--lprime and --p must be given together".into()),
        }
    }
}

#[derive(Args)]
struct QbArgs {
    #[arg(long = "N", allow_hyphen_values = true)]
    n: i64,
    #[arg(long)]
    t: i64,
    /// Evaluate through the l-adic factorization instead of directly.
    #[arg(long)]
    ladic: bool,
    #[command(flatten)]
    ring: RingArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum CtxKind {
    Kwindow,
    Schur,
    Quotient,
}

#[derive(Args)]
struct MultArgs {
    #[arg(long, value_enum)]
    ctx: CtxKind,
    #[arg(long)]
    n: usize,
    /// Degree, for the Schur algebra.
    #[arg(long)]
    r: Option<i64>,
    /// Print the compact text form instead of JSON.
    #[arg(long)]
    text: bool,
    #[command(flatten)]
    ring: RingArgs,
    /// Left factor, e.g. `E12+diag(1,0)` or `[[1,1],[0,0]]`.
    x: String,
    /// Right factor.
    y: String,
}

enum Outcome {
    Pass,
    Fail,
}

fn qb(a: &QbArgs) -> Result<Outcome, String> {
    if a.t < 0 {
        return Err(format!("t = {} must be nonnegative", a.t));
    }
    match a.ring.spec()? {
        None => println!("{}", gauss_binom(a.n, a.t)),
        Some(k) => {
            let via = if a.ladic { BinomRoute::Ladic } else { BinomRoute::Direct };
            let x = qbinom_at_eps(a.n, a.t, &k, via).map_err(|e| e.to_string())?;
            println!("{}", k.format_elem(&x));
        }
    }
    Ok(Outcome::Pass)
}

fn product<R: Ring>(ctx: &AlgebraCtx<R>, x: &MatIdx, y: &MatIdx, text: bool) -> Result<(), String> {
    let go = || -> qgl::Result<_> { ctx.mult(&ctx.basis(x)?, &ctx.basis(y)?) };
    let z = go().map_err(|e| e.to_string())?;
    if text {
        println!("{z}");
    } else {
        println!("{}", z.to_json());
    }
    Ok(())
}

fn with_ctx<R: Ring>(a: &MultArgs, ring: &R, x: &MatIdx, y: &MatIdx) -> Result<(), String> {
    let ctx = match a.ctx {
        CtxKind::Kwindow => AlgebraCtx::kwindow_for(a.n, ring, &[x, y]),
        CtxKind::Schur => {
            let r = a.r.ok_or("--r is required for the Schur algebra")?;
            AlgebraCtx::schur(a.n, r, ring)
        }
        CtxKind::Quotient => unreachable!(),
    }
    .map_err(|e| e.to_string())?;
    product(&ctx, x, y, a.text)
}

fn mult(a: &MultArgs) -> Result<Outcome, String> {
    let x = MatIdx::parse(&a.x, a.n).map_err(|e| e.to_string())?;
    let y = MatIdx::parse(&a.y, a.n).map_err(|e| e.to_string())?;
    match (a.ctx, a.ring.spec()?) {
        (CtxKind::Quotient, None) => return Err("the quotient algebra needs --lprime and --p".into()),
        (CtxKind::Quotient, Some(k)) => {
            let ctx = AlgebraCtx::quotient(a.n, &k).map_err(|e| e.to_string())?;
            product(&ctx, &x, &y, a.text)?;
        }
        (_, None) => with_ctx(a, &Generic::new(), &x, &y)?,
        (_, Some(k)) => with_ctx(a, &k, &x, &y)?,
    }
    Ok(Outcome::Pass)
}

fn verify(a: &VerifyArgs) -> Result<Outcome, String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| e.to_string())?;
    let rep = pool.install(|| run_suite(a)).map_err(|e| e.to_string())?;
    let json = serde_json::to_string_pretty(&rep.to_json()).expect("report serializes");
    if let Some(path) = &a.out {
        std::fs::write(path, &json).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if a.json {
        println!("{json}");
    } else {
        print!("{}", rep.summary());
    }
    Ok(if rep.pass() { Outcome::Pass } else { Outcome::Fail })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Qb(a) => qb(a),
        Cmd::Mult(a) => mult(a),
        Cmd::Verify(a) => verify(a),
    };
    match res {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("qg: {msg}");
            ExitCode::from(2)
        }
    }
}

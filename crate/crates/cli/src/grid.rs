//! Suite dispatch: expand the grid, run points on the worker pool, merge in order.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use qgl::report::Report;
use qgl::suites::{self, Level};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Gauss,
    Relations,
    Triangular,
    Tau,
    Closure,
    Bases,
    Det,
    Realization,
    Schur,
    Oracle,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, value_delimiter = ',')]
    pub lprime: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    pub h: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub r: Vec<i64>,
    #[arg(long, default_value_t = 4)]
    pub max_m: u32,
    #[arg(long, default_value_t = 4)]
    pub max_r: i64,
    /// Random cases per grid point for sampled checks.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 20240611)]
    pub seed: u64,
    /// Also check the families M0, M, B, B' (bases, h = 1 only).
    #[arg(long)]
    pub all_families: bool,
    /// Also compare level h with level h + 1 (realization).
    #[arg(long)]
    pub tower: bool,
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    pub json: bool,
    /// Write the JSON report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

/// Product grids skip pairs where `p` divides `l'`; no such field parameters exist.
fn admissible(l: u64, p: u64) -> bool {
    p == 0 || !l.is_multiple_of(p)
}

fn nonempty<T>(v: Vec<T>) -> qgl::Result<Vec<T>> {
    if v.is_empty() {
        Err(qgl::Error::InvalidParams("no admissible (l', p) in the grid".into()))
    } else {
        Ok(v)
    }
}

fn or<T: Clone>(given: &[T], default: &[T]) -> Vec<T> {
    if given.is_empty() {
        default.to_vec()
    } else {
        given.to_vec()
    }
}

impl VerifyArgs {
    fn levels(&self, default: &[Level]) -> qgl::Result<Vec<Level>> {
        if self.lprime.is_empty() && self.p.is_empty() && self.h.is_empty() {
            return Ok(default.to_vec());
        }
        let mut out = Vec::new();
        for &l in &or(&self.lprime, &[3]) {
            for &p in or(&self.p, &[2]).iter().filter(|&&p| admissible(l, p)) {
                for &h in &or(&self.h, &[1]) {
                    out.push((l, p, h));
                }
            }
        }
        nonempty(out)
    }

    fn pairs(&self, default: &[(u64, u64)]) -> qgl::Result<Vec<(u64, u64)>> {
        if self.lprime.is_empty() && self.p.is_empty() {
            return Ok(default.to_vec());
        }
        let ps = or(&self.p, &[2]);
        nonempty(
            or(&self.lprime, &[3])
                .into_iter()
                .flat_map(|l| ps.iter().map(move |&p| (l, p)))
                .filter(|&(l, p)| admissible(l, p))
                .collect(),
        )
    }

    fn schur_grid(&self) -> Vec<(usize, u32, i64)> {
        if self.n.is_empty() && self.h.is_empty() && self.r.is_empty() {
            return suites::SCHUR_GRID.to_vec();
        }
        let mut out = Vec::new();
        for &n in &or(&self.n, &[2]) {
            for &h in &or(&self.h, &[1]) {
                for &r in &or(&self.r, &[1, 2, 3]) {
                    out.push((n, h, r));
                }
            }
        }
        out
    }
}

fn merge<T, F>(name: &str, params: Value, seed: u64, points: &[T], f: F) -> qgl::Result<Report>
where
    T: Sync,
    F: Fn(&T) -> qgl::Result<Report> + Send + Sync,
{
    let t0 = Instant::now();
    let parts: Vec<Report> = points.par_iter().map(f).collect::<qgl::Result<_>>()?;
    let mut rep = Report::new(name, params, seed);
    for part in parts {
        rep.extend(part.checks);
    }
    rep.runtime_ms = t0.elapsed().as_millis();
    Ok(rep)
}

pub fn run_suite(a: &VerifyArgs) -> qgl::Result<Report> {
    let seed = a.seed;
    let samples = a.samples.unwrap_or(200);
    match a.suite {
        Suite::Gauss => {
            let pairs = a.pairs(&suites::GAUSS_PAIRS)?;
            let hs = or(&a.h, &suites::GAUSS_LEVELS);
            let pts: Vec<_> = pairs.iter().flat_map(|&pr| hs.iter().map(move |&h| (pr, h))).collect();
            merge("gauss", json!({ "pairs": pairs, "h": hs }), seed, &pts, |&(pr, h)| {
                suites::gauss(&[pr], &[h])
            })
        }
        Suite::Relations => {
            let ns = or(&a.n, &[2, 3]);
            let rs = or(&a.r, &[1, 2, 3, 4]);
            let pts: Vec<_> = ns.iter().flat_map(|&n| rs.iter().map(move |&r| (n, r))).collect();
            merge("relations", json!({ "n": ns, "r": rs, "ring": "generic" }), seed, &pts, |&(n, r)| {
                suites::relations(&[n], &[r])
            })
        }
        Suite::Triangular => {
            let params = json!({ "max_r": a.max_r, "random_n3": samples });
            merge("triangular", params, seed, &[()], |_| suites::triangular(a.max_r, samples, seed))
        }
        Suite::Tau => {
            let lv = a.levels(&suites::WELL_DEFINED_LEVELS)?;
            let params = json!({ "levels": lv, "n": 2, "samples": samples });
            merge("tau", params, seed, &lv, |&l| suites::tau(&[l], samples, seed))
        }
        Suite::Closure => {
            let lv = a.levels(&suites::ORACLE_LEVELS)?;
            let ns = or(&a.n, &[2, 3]);
            let pts: Vec<_> = ns.iter().flat_map(|&n| lv.iter().map(move |&l| (n, l))).collect();
            merge("closure", json!({ "levels": lv, "n": ns }), seed, &pts, |&(n, l)| {
                suites::closure(&[l], &[n])
            })
        }
        Suite::Bases => {
            let lv = a.levels(&suites::REALIZATION_LEVELS)?;
            let ns = or(&a.n, &[2]);
            let pts: Vec<_> = ns.iter().flat_map(|&n| lv.iter().map(move |&l| (n, l))).collect();
            let params = json!({ "n": ns, "levels": lv, "all_families": a.all_families });
            merge("bases", params, seed, &pts, |&(n, l)| suites::bases(n, &[l], a.all_families))
        }
        Suite::Det => merge("det", json!({ "max_m": a.max_m }), seed, &[()], |_| suites::det(a.max_m)),
        Suite::Realization => {
            let lv = a.levels(&suites::REALIZATION_LEVELS)?;
            let ns = or(&a.n, &[2]);
            let mut pts: Vec<(usize, Option<Level>)> =
                ns.iter().flat_map(|&n| lv.iter().map(move |&l| (n, Some(l)))).collect();
            if a.tower {
                pts.extend(ns.iter().map(|&n| (n, None)));
            }
            let params = json!({ "n": ns, "levels": lv, "tower": a.tower });
            merge("realization", params, seed, &pts, |&(n, l)| match l {
                Some(l) => suites::realization(n, &[l], false, seed),
                None => suites::realization(n, &[], true, seed),
            })
        }
        Suite::Schur => {
            let pairs = a.pairs(&[(3, 2)])?;
            let grid = a.schur_grid();
            let samples = a.samples.unwrap_or(100);
            let pts: Vec<_> = pairs.iter().flat_map(|&pr| grid.iter().map(move |&g| (pr, g))).collect();
            let params = json!({ "pairs": pairs, "grid": grid, "samples": samples });
            merge("schur", params, seed, &pts, |&((l, p), g)| suites::schur(&[g], l, p, samples, seed))
        }
        Suite::Oracle => {
            let lv = a.levels(&suites::ORACLE_LEVELS)?;
            merge("oracle", json!({ "levels": lv, "n": 2 }), seed, &lv, |&l| suites::oracle(&[l]))
        }
    }
}

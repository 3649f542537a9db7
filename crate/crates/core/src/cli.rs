//! The `bredon` command line: argument parsing, command dispatch, JSON and
//! text rendering, and the optional on-disk result cache.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bigraded_core::{BiDegree, FgAbGroup};
use crate::chow::{invariants_antiinvariants, ChowError};
use crate::coeff_rings::verify_coeff_ring;
use crate::group_cohom::{e2_term, verify_e2_tensor, CohomError};
use crate::ideals::{BidegreeWindow, IdealError};
use crate::maps::{verify_prop_algebraic, MapError};
use crate::poly::verify_lemma_id;
use crate::quadric::checks::{
    free_quotient_consistency, free_rank_vs_e2, isotropic_presentation, isotropic_window, mod2_consistency, odd_inclusion_iso,
    pfister_check,
};
use crate::quadric::{self, cellular_ring, chow_presentation, IdealReading, QuadricError};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "BREDON_CACHE_DIR";

/// `(n, s)` pairs checked by the isotropic suite when none are given.
pub const ISOTROPIC_CASES: [(i32, i32); 7] = [(2, 1), (3, 1), (4, 1), (4, 2), (5, 2), (6, 2), (6, 3)];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Quadric(#[from] QuadricError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Cohom(#[from] CohomError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    LemmaId,
    Algebraic,
    TheoremA,
    Pfister,
    E2Consistency,
    CoeffRing,
    Mod2,
    FreeQuotient,
    OddInclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    Literal,
    Generated,
    Corrected,
}

impl From<Reading> for IdealReading {
    fn from(r: Reading) -> Self {
        match r {
            Reading::Literal => IdealReading::Literal,
            Reading::Generated => IdealReading::Generated,
            Reading::Corrected => IdealReading::Corrected,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "bredon", version, about = "Bigraded Bredon cohomology of real quadrics")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Bidegree window `pmin:pmax:qmin:qmax` for sweeps.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<BidegreeWindow>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The group in one bidegree.
    Group {
        #[arg(short)]
        n: i32,
        #[arg(short, default_value_t = 0)]
        s: i32,
        #[arg(short, allow_negative_numbers = true)]
        p: i32,
        #[arg(short, allow_negative_numbers = true)]
        q: i32,
    },
    /// The ring presentation.
    Ring {
        #[arg(short)]
        n: i32,
        #[arg(short, default_value_t = 0)]
        s: i32,
    },
    /// Product of two classes, e.g. `h^2`, `eta*h`, `int:e*t^-1*x`.
    Mul {
        #[arg(short)]
        n: i32,
        #[arg(short, default_value_t = 0)]
        s: i32,
        a: String,
        b: String,
    },
    /// Table of the E2 page for one weight `q`.
    E2 {
        #[arg(short)]
        n: i32,
        #[arg(short, allow_negative_numbers = true)]
        q: i32,
        #[arg(long)]
        i_max: Option<i32>,
        #[arg(long)]
        j_max: Option<i32>,
    },
    /// Chow ring of the complex quadric with its conjugation action.
    Chow {
        #[arg(short)]
        n: i32,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest polynomial index for `lemma-id`.
        #[arg(long)]
        m_max: Option<usize>,
        /// Power-series order for `lemma-id`.
        #[arg(long)]
        series_order: Option<usize>,
        /// Largest dimension for the sweeping suites (largest `m` for `odd-inclusion`).
        #[arg(long)]
        n_max: Option<i32>,
        /// Largest Pfister level for `pfister`.
        #[arg(long)]
        r_max: Option<u32>,
        /// Reading of the isotropic ideal.
        #[arg(long, value_enum, default_value_t = Reading::Literal)]
        reading: Reading,
        /// Run a sweeping suite for this one dimension (`m` for `odd-inclusion`).
        #[arg(short)]
        n: Option<i32>,
        /// Witt index for `theorem-a`; all admissible ones when omitted.
        #[arg(short)]
        s: Option<i32>,
    },
    /// All groups over a window as TSV.
    Table {
        #[arg(short)]
        n: i32,
        #[arg(short, default_value_t = 0)]
        s: i32,
    },
}

/// What a command printed and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub params: Value,
    pub result: Value,
    pub version: String,
}

impl OutputRecord {
    /// Verification records carry `passed`; all others count as success.
    pub fn passed(&self) -> bool {
        self.result.get("passed").and_then(Value::as_bool).unwrap_or(true)
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    match execute(&cli, cache.as_deref()) {
        Ok(record) => {
            let stdout = match cli.format {
                Format::Json => serde_json::to_string_pretty(&record).expect("records serialise") + "\n",
                Format::Text => render_text(&record),
            };
            Outcome { code: if record.passed() { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn check_ns(n: i32, s: i32) -> Result<(), CliError> {
    if n < 1 || s < 0 || 2 * s > n {
        return Err(CliError::Usage(format!("need n >= 1 and 0 <= 2s <= n, got n={n}, s={s}")));
    }
    Ok(())
}

fn window_or(cli: &Cli, default: BidegreeWindow) -> BidegreeWindow {
    cli.window.unwrap_or(default)
}

/// Name and parameters of a command, used for the record and the cache key.
fn describe(cli: &Cli) -> (String, Value) {
    let w = cli.window.map(|w| w.to_string());
    match &cli.command {
        Command::Group { n, s, p, q } => ("group".into(), json!({"n": n, "s": s, "p": p, "q": q})),
        Command::Ring { n, s } => ("ring".into(), json!({"n": n, "s": s})),
        Command::Mul { n, s, a, b } => ("mul".into(), json!({"n": n, "s": s, "a": a, "b": b})),
        Command::E2 { n, q, i_max, j_max } => ("e2".into(), json!({"n": n, "q": q, "i_max": i_max, "j_max": j_max})),
        Command::Chow { n } => ("chow".into(), json!({"n": n})),
        Command::Verify { suite, m_max, series_order, n_max, r_max, reading, n, s } => (
            "verify".into(),
            json!({
                "suite": suite, "m_max": m_max, "series_order": series_order, "n_max": n_max,
                "r_max": r_max, "reading": IdealReading::from(*reading), "n": n, "s": s, "window": w,
            }),
        ),
        Command::Table { n, s } => ("table".into(), json!({"n": n, "s": s, "window": w})),
    }
}

fn execute(cli: &Cli, cache: Option<&Path>) -> Result<OutputRecord, CliError> {
    let (command, params) = describe(cli);
    let key = cache_key(&command, &params);
    if let Some(dir) = cache {
        if let Some(rec) = cache_read(dir, &key) {
            return Ok(rec);
        }
    }
    let result = compute(cli)?;
    let record = OutputRecord { command, params, result, version: VERSION.into() };
    if let Some(dir) = cache {
        // A failed cache write only costs a recomputation later.
        let _ = cache_write(dir, &key, &record);
    }
    Ok(record)
}

fn cache_key(command: &str, params: &Value) -> String {
    let mut parts = vec![command.to_string(), format!("v{VERSION}")];
    if let Value::Object(map) = params {
        for (k, v) in map {
            if !v.is_null() {
                let v = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                parts.push(format!("{k}={v}"));
            }
        }
    }
    parts
        .join("_")
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '-' | '=' | '.' | '_') { c } else { '~' })
        .collect()
}

fn cache_read(dir: &Path, key: &str) -> Option<OutputRecord> {
    let text = fs::read_to_string(dir.join(format!("{key}.json"))).ok()?;
    serde_json::from_str(&text).ok()
}

/// Writes to a temporary file in `dir`, then renames it into place.
fn cache_write(dir: &Path, key: &str, record: &OutputRecord) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
    fs::write(&tmp, serde_json::to_vec_pretty(record)?)?;
    fs::rename(&tmp, dir.join(format!("{key}.json")))
}

fn compute(cli: &Cli) -> Result<Value, CliError> {
    Ok(match &cli.command {
        Command::Group { n, s, p, q } => {
            check_ns(*n, *s)?;
            serde_json::to_value(quadric::cohomology_group(*n, *s, *p, *q)?)?
        }
        Command::Ring { n, s } => {
            check_ns(*n, *s)?;
            let pres = quadric::presentation(*n, *s)?;
            let mut v = serde_json::to_value(&pres)?;
            v["text"] = json!(pres.to_string());
            v
        }
        Command::Mul { n, s, a, b } => {
            check_ns(*n, *s)?;
            let r = quadric::ring(*n, *s)?;
            let (x, y) = (r.parse_class(a)?, r.parse_class(b)?);
            let prod = r.multiply(&x, &y)?;
            json!({"a": x.to_string(), "b": y.to_string(), "product": prod.to_string(), "degree": r.degree(&prod)})
        }
        Command::E2 { n, q, i_max, j_max } => {
            check_ns(*n, 0)?;
            let (i_max, j_max) = (i_max.unwrap_or(4), j_max.unwrap_or(2 * n));
            if i_max < 0 || j_max < 0 {
                return Err(CliError::Usage("i-max and j-max must be non-negative".into()));
            }
            let mut cells = Vec::new();
            for j in 0..=j_max {
                for i in 0..=i_max {
                    cells.push(e2_term(*n, i, j, *q)?);
                }
            }
            json!({"n": n, "q": q, "i_max": i_max, "j_max": j_max, "cells": cells})
        }
        Command::Chow { n } => {
            check_ns(*n, 0)?;
            let pres = chow_presentation(*n)?;
            json!({
                "presentation": pres.to_string(),
                "cellular": cellular_ring(&pres)?.to_string(),
                "codimensions": invariants_antiinvariants(*n)?,
            })
        }
        Command::Table { n, s } => {
            check_ns(*n, *s)?;
            let w = window_or(cli, BidegreeWindow::standard(*n));
            let r = quadric::ring(*n, *s)?;
            let mut rows = Vec::new();
            for d in w.iter() {
                rows.push(json!({"p": d.p, "q": d.q, "group": r.group(d)?}));
            }
            json!({"n": n, "s": s, "window": w, "rows": rows})
        }
        Command::Verify { suite, m_max, series_order, n_max, r_max, reading, n, s } => {
            verify(cli, *suite, *m_max, *series_order, *n_max, *r_max, (*reading).into(), *n, *s)?
        }
    })
}

struct Checks(Vec<Value>);

impl Checks {
    fn push(&mut self, name: String, passed: bool, detail: impl Serialize) -> Result<(), CliError> {
        self.0.push(json!({"name": name, "passed": passed, "detail": serde_json::to_value(detail)?}));
        Ok(())
    }

    fn passed(&self) -> bool {
        self.0.iter().all(|c| c["passed"].as_bool() == Some(true))
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    cli: &Cli,
    suite: Suite,
    m_max: Option<usize>,
    series_order: Option<usize>,
    n_max: Option<i32>,
    r_max: Option<u32>,
    reading: IdealReading,
    n: Option<i32>,
    s: Option<i32>,
) -> Result<Value, CliError> {
    let mut checks = Checks(Vec::new());
    let mut extra = serde_json::Map::new();
    let ns = |default: i32, lo: i32| -> Vec<i32> {
        match n {
            Some(n) => vec![n],
            None => (lo..=n_max.unwrap_or(default)).collect(),
        }
    };
    match suite {
        Suite::LemmaId => {
            let r = verify_lemma_id(m_max.unwrap_or(64), series_order.unwrap_or(40));
            checks.push(format!("identities up to {}", r.m_max), r.passed(), &r)?;
        }
        Suite::CoeffRing => {
            let r = verify_coeff_ring((-6, 6), (-10, 10));
            checks.push("coefficient ring axioms".into(), r.passed(), &r)?;
        }
        Suite::Algebraic => {
            for n in ns(8, 1) {
                let r = verify_prop_algebraic(n, &window_or(cli, BidegreeWindow::standard(n)))?;
                checks.push(format!("n={n}"), r.passed(), &r)?;
            }
        }
        Suite::TheoremA => {
            let cases: Vec<(i32, i32)> = match (n, s) {
                (Some(n), Some(s)) => vec![(n, s)],
                (Some(n), None) => (1..=n / 2).map(|s| (n, s)).collect(),
                _ => ISOTROPIC_CASES.to_vec(),
            };
            for (n, s) in cases {
                check_ns(n, s)?;
                if s == 0 {
                    return Err(CliError::Usage("the isotropic suite needs s >= 1".into()));
                }
                let r = isotropic_presentation(n, s, reading, &window_or(cli, isotropic_window(n)))?;
                checks.push(format!("(n,s)=({n},{s})"), r.passed(), &r)?;
            }
        }
        Suite::Pfister => {
            let mut discrepancy = false;
            for r in 2..=r_max.unwrap_or(3) {
                let rep = pfister_check(r)?;
                discrepancy |= rep.paper_discrepancy;
                checks.push(format!("r={r}"), true, &rep)?;
            }
            extra.insert("paper_discrepancy".into(), json!(discrepancy));
        }
        Suite::E2Consistency => {
            for n in ns(6, 1) {
                let r = verify_e2_tensor(n, 2 * n + 4, (-n - 4, n + 4))?;
                checks.push(format!("tensor model n={n}"), r.passed(), &r)?;
                let f = free_rank_vs_e2(n, &window_or(cli, BidegreeWindow::standard(n)))?;
                checks.push(format!("free ranks n={n}"), f.passed(), &f)?;
            }
        }
        Suite::Mod2 => {
            for n in ns(6, 1) {
                let r = mod2_consistency(n, &window_or(cli, BidegreeWindow::standard(n)))?;
                checks.push(format!("n={n}"), r.passed(), &r)?;
            }
        }
        Suite::FreeQuotient => {
            for n in ns(5, 1) {
                let r = free_quotient_consistency(n, &window_or(cli, BidegreeWindow::standard(n)))?;
                checks.push(format!("n={n}"), r.passed(), &r)?;
            }
        }
        Suite::OddInclusion => {
            for m in ns(3, 1) {
                let r = odd_inclusion_iso(m, &window_or(cli, BidegreeWindow::standard(2 * m - 1)))?;
                checks.push(format!("m={m}"), r.passed(), &r)?;
            }
        }
    }
    let mut out = json!({"suite": suite, "passed": checks.passed(), "checks": checks.0});
    out.as_object_mut().expect("object").extend(extra);
    Ok(out)
}

fn group_text(v: &Value) -> String {
    let rank = v["rank"].as_u64().unwrap_or(0) as usize;
    let torsion: Vec<u64> = v["torsion"].as_array().map(|a| a.iter().filter_map(Value::as_u64).collect()).unwrap_or_default();
    FgAbGroup::from_parts(rank, &torsion).to_string()
}

fn degree_text(v: &Value) -> String {
    match (v["p"].as_i64(), v["q"].as_i64()) {
        (Some(p), Some(q)) => BiDegree::new(p as i32, q as i32).to_string(),
        _ => "-".into(),
    }
}

/// Plain-text rendering of a record; numbers match the JSON payload.
pub fn render_text(rec: &OutputRecord) -> String {
    let r = &rec.result;
    let mut out = String::new();
    match rec.command.as_str() {
        "group" => out.push_str(&group_text(r)),
        "ring" => {
            out.push_str(r["text"].as_str().unwrap_or_default());
            for g in r["generators"].as_array().into_iter().flatten() {
                out.push_str(&format!("\n  deg {} = {}", g["name"].as_str().unwrap_or_default(), degree_text(&g["degree"])));
            }
        }
        "mul" => out.push_str(r["product"].as_str().unwrap_or_default()),
        "e2" => {
            let i_max = r["i_max"].as_i64().unwrap_or(0);
            out.push_str(&format!("E2 for n={} q={} (rows j, columns i)\n", r["n"], r["q"]));
            out.push_str(&format!("j\\i\t{}", (0..=i_max).map(|i| i.to_string()).collect::<Vec<_>>().join("\t")));
            let cells = r["cells"].as_array().cloned().unwrap_or_default();
            for row in cells.chunks((i_max + 1) as usize) {
                let j = row[0]["j"].as_i64().unwrap_or(0);
                let groups: Vec<String> = row.iter().map(|c| group_text(&c["group"])).collect();
                out.push_str(&format!("\n{j}\t{}", groups.join("\t")));
            }
        }
        "chow" => {
            out.push_str(&format!("CH* = {}\nover B: {}", r["presentation"].as_str().unwrap_or_default(), r["cellular"].as_str().unwrap_or_default()));
            for c in r["codimensions"].as_array().into_iter().flatten() {
                let list = |k: &str| c[k].as_array().map(|a| a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(", ")).unwrap_or_default();
                out.push_str(&format!("\ncodim {}: invariant [{}], anti-invariant [{}]", c["codim"], list("invariants"), list("anti_invariants")));
            }
        }
        "table" => {
            out.push_str("p\tq\trank\ttorsion\tgroup");
            for row in r["rows"].as_array().into_iter().flatten() {
                let g = &row["group"];
                let torsion: Vec<String> = g["torsion"].as_array().into_iter().flatten().map(|t| t.to_string()).collect();
                out.push_str(&format!("\n{}\t{}\t{}\t{}\t{}", row["p"], row["q"], g["rank"], torsion.join(","), group_text(g)));
            }
        }
        "verify" => {
            let verdict = if rec.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("suite {}: {verdict}", r["suite"].as_str().unwrap_or_default()));
            for c in r["checks"].as_array().into_iter().flatten() {
                let mark = if c["passed"].as_bool() == Some(true) { "ok  " } else { "FAIL" };
                out.push_str(&format!("\n  {mark} {}", c["name"].as_str().unwrap_or_default()));
            }
            if let Some(d) = r.get("paper_discrepancy") {
                out.push_str(&format!("\n  listed ideal differs from J_n: {d}"));
            }
        }
        _ => out.push_str(&r.to_string()),
    }
    out.push('\n');
    out
}

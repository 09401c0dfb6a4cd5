use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use digonlab::arrangement::{digons, normalize_outer, touching_vertices, validate};
use digonlab::digon::{split_transversal, table_against_drawing, verify_bound, verify_bound_with, Status};
use digonlab::enumeration::{enumerate, sweep, EnumerationConfig, Strategy};
use digonlab::pca::{from_pca, to_pca};
use digonlab::transversal::BaseChoice;
use digonlab::{constructions, fixtures, render, Arrangement, CurveId, Error};

const OK: u8 = 0;
const CHECK_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "digonlab", version, about = "Digon counting for arrangements of pairwise crossing closed curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a PCA file describes a valid arrangement.
    Validate { file: Option<PathBuf> },
    /// List the digons, with the outer face moved off a digon if needed.
    Digons { file: Option<PathBuf> },
    /// Run the full bound check and print the JSON report.
    Verify {
        file: Option<PathBuf>,
        /// Shadow this curve with the transversal instead of the default one.
        #[arg(long)]
        base: Option<u32>,
    },
    /// Print every arrangement of n curves as PCA records.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "a")]
        strategy: String,
        /// Allow n = 5.
        #[arg(long)]
        long: bool,
    },
    /// Enumerate and verify every arrangement of n curves.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "a")]
        strategy: String,
        #[arg(long)]
        long: bool,
    },
    /// Build an arrangement: grunbaum N, grunbaum-wiring N, chain K,
    /// two-circles, venn3, fixture NAME.
    Construct { kind: String, params: Vec<String> },
    /// SVG of the double cover drawn along the transversal.
    Render { file: Option<PathBuf> },
    /// Quick end-to-end checks on the shipped fixtures.
    Selftest,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit(_) => RESOURCE,
            Error::Consistency(_) | Error::SurgeryFailed(_) => CHECK_FAILED,
            _ => INPUT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: INPUT_ERROR, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: INPUT_ERROR, message: message.into() }
}

type Outcome = Result<u8, Failure>;

fn read_input(file: &Option<PathBuf>) -> Result<String, Failure> {
    match file {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn load(file: &Option<PathBuf>) -> Result<Arrangement, Failure> {
    Ok(from_pca(&read_input(file)?)?)
}

fn print_json(v: &impl serde::Serialize) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(|e| Failure { code: CHECK_FAILED, message: e.to_string() })?;
    writeln!(out)?;
    Ok(())
}

fn strategy(s: &str) -> Result<Strategy, Failure> {
    Ok(s.parse::<Strategy>()?)
}

fn cmd_validate(file: &Option<PathBuf>) -> Outcome {
    let a = load(file)?;
    let r = validate(&a);
    print_json(&json!({ "report": r, "messages": r.messages() }))?;
    Ok(if r.valid { OK } else { CHECK_FAILED })
}

fn cmd_digons(file: &Option<PathBuf>) -> Outcome {
    let a = load(file)?;
    a.ensure_valid()?;
    let base = match split_transversal(&a)? {
        Some((b, _)) => b,
        None => a,
    };
    let (n, moved) = normalize_outer(&base)?;
    let ds = digons(&n)?;
    let curves = n.curve_count();
    print_json(&json!({
        "n": curves,
        "digon_count": ds.len(),
        "bound": (2 * curves).saturating_sub(2),
        "touchings": touching_vertices(&n).len(),
        "outer_moved": moved,
        "outer": n.outer().0,
        "digons": ds,
    }))?;
    Ok(OK)
}

fn cmd_verify(file: &Option<PathBuf>, base: Option<u32>) -> Outcome {
    let a = load(file)?;
    a.ensure_valid()?;
    let r = match base {
        Some(c) => verify_bound_with(&a, BaseChoice::Curve(CurveId(c))),
        None => verify_bound(&a),
    };
    print_json(&r)?;
    Ok(match r.status {
        Status::Pass => OK,
        Status::Fail => CHECK_FAILED,
        Status::Error => {
            eprintln!("error: {}", r.error.as_deref().unwrap_or("verification did not run"));
            INPUT_ERROR
        }
    })
}

fn config(strat: &str, long: bool) -> Result<EnumerationConfig, Failure> {
    Ok(EnumerationConfig { allow_long: long, ..EnumerationConfig::with_strategy(strategy(strat)?) })
}

fn cmd_enumerate(n: usize, strat: &str, long: bool) -> Outcome {
    let run = enumerate(n, &config(strat, long)?)?;
    let mut out = BufWriter::new(io::stdout().lock());
    for (i, (_, a)) in run.arrangements.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        out.write_all(to_pca(a).as_bytes())?;
    }
    out.flush()?;
    Ok(OK)
}

fn cmd_sweep(n: usize, strat: &str, long: bool) -> Outcome {
    let run = enumerate(n, &config(strat, long)?)?;
    let s = sweep(&run)?;
    print_json(&s)?;
    Ok(if s.failures == 0 && s.max_digons <= s.bound { OK } else { CHECK_FAILED })
}

fn param(params: &[String], i: usize, what: &str) -> Result<usize, Failure> {
    let p = params.get(i).ok_or_else(|| input_error(format!("missing parameter {what}")))?;
    p.parse().map_err(|_| input_error(format!("{what} must be a number, got {p:?}")))
}

fn cmd_construct(kind: &str, params: &[String]) -> Outcome {
    let a = match kind {
        "grunbaum" => constructions::grunbaum(param(params, 0, "n")?)?,
        "grunbaum-wiring" => constructions::grunbaum_wiring(param(params, 0, "n")?)?,
        "chain" => constructions::chain(param(params, 0, "k")?)?,
        "two-circles" => constructions::two_circles(),
        "venn3" => constructions::venn3(),
        "fixture" => {
            let name = params.first().ok_or_else(|| input_error("missing fixture name"))?;
            fixtures::load(name)?
        }
        _ => return Err(input_error(format!("unknown construction {kind:?}"))),
    };
    print!("{}", to_pca(&a));
    Ok(OK)
}

fn cmd_render(file: &Option<PathBuf>) -> Outcome {
    let a = load(file)?;
    a.ensure_valid()?;
    print!("{}", render::render_arrangement(&a)?);
    Ok(OK)
}

fn check(name: &str, ok: bool, detail: String) -> bool {
    println!("{} {name}: {detail}", if ok { "ok  " } else { "FAIL" });
    ok
}

fn cmd_selftest() -> Outcome {
    let mut all = true;
    for name in fixtures::names() {
        let src = fixtures::source(name).unwrap_or_default();
        let a = fixtures::load(name)?;
        let valid = validate(&a).valid;
        all &= check(name, valid && to_pca(&a) == src, format!("valid {valid}, round trip {}", to_pca(&a) == src));
    }
    let g6 = verify_bound(&fixtures::load("grunbaum6")?);
    all &= check(
        "grunbaum6 verify",
        g6.passed() && g6.digon_count == 10,
        format!("{:?}, {} digons", g6.status, g6.digon_count),
    );
    let f4 = verify_bound(&fixtures::load("figure4")?);
    all &= check("figure4 verify", f4.passed(), format!("{:?}, order {}", f4.status, f4.cyclic_order.join(" ")));
    let table = table_against_drawing()?;
    let agree = table.iter().filter(|c| c.agrees()).count();
    all &= check("parity table", agree == table.len(), format!("{agree}/{} combinations agree", table.len()));
    let s = sweep(&enumerate(3, &EnumerationConfig::default())?)?;
    all &= check("sweep n=3", s.failures == 0, format!("{} arrangements, {} failures", s.total, s.failures));
    Ok(if all { OK } else { CHECK_FAILED })
}

fn set_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("DIGONLAB_THREADS") else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| input_error(format!("DIGONLAB_THREADS must be a number, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure { code: RESOURCE, message: e.to_string() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = set_threads().and_then(|_| match &cli.cmd {
        Cmd::Validate { file } => cmd_validate(file),
        Cmd::Digons { file } => cmd_digons(file),
        Cmd::Verify { file, base } => cmd_verify(file, *base),
        Cmd::Enumerate { n, strategy, long } => cmd_enumerate(*n, strategy, *long),
        Cmd::Sweep { n, strategy, long } => cmd_sweep(*n, strategy, *long),
        Cmd::Construct { kind, params } => cmd_construct(kind, params),
        Cmd::Render { file } => cmd_render(file),
        Cmd::Selftest => cmd_selftest(),
    });
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

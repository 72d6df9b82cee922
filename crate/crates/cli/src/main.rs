use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use opaque_core::analysis::{is_weak_barrier, strong_barrier_mc, Verdict};
use opaque_core::convexify::{convexify_with, SolverOptions};
use opaque_core::io::{polytope_json, read_barrier, read_polytope, to_json};
use opaque_core::scenarios::{run_demo, DEMOS};
use opaque_core::stability::stability_report;
use opaque_core::svg::{render, Scene};
use opaque_core::{Dim, Error};

/// Opaque sets and barriers of convex bodies.
#[derive(Parser)]
#[command(name = "opaque", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the convexification co(B) of a barrier and write it as polytope JSON.
    Convexify {
        barrier: PathBuf,
        out: PathBuf,
        /// Also draw the body (if given), the barrier and ∂co(B) (planar only).
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Body drawn under the barrier in the SVG.
        #[arg(long)]
        body: Option<PathBuf>,
        /// Write the solver's (iteration, residual) records as JSON lines (spatial barriers).
        #[arg(long)]
        log: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 500)]
        max_iter: usize,
    },
    /// Decide whether a barrier is weak (exact or certified) and/or estimate how many lines it misses.
    Check {
        barrier: PathBuf,
        body: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Weak)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        lines: u64,
    },
    /// Deficit, bounded-Lipschitz distance and the J_β table for a weak barrier.
    Stability {
        barrier: PathBuf,
        body: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        /// Write the β table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run a built-in scenario and check its assertions.
    Demo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(DEMOS))]
        name: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Weak,
    Strong,
    Both,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::NotConverged(_) => 4,
            Error::Degenerate(_) | Error::InvalidData(_) | Error::Containment(_) | Error::Lp(_) => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

fn log_lines(log: &[(usize, f64)]) -> String {
    log.iter().map(|(i, r)| format!("{}\n", serde_json::json!({ "iteration": i, "residual": r }))).collect()
}

fn convexify_cmd(
    barrier: &Path,
    out: &Path,
    svg: Option<&Path>,
    body: Option<&Path>,
    log: Option<&Path>,
    opts: &SolverOptions,
) -> Result<u8, Failure> {
    let b = read_barrier(barrier)?;
    let k = body.map(read_polytope).transpose()?;
    let (co, solution) = match convexify_with(&b, opts) {
        Ok(r) => r,
        Err(Error::NotConverged(s)) => {
            if let Some(path) = log {
                write(path, &log_lines(&s.log))?;
            }
            return Err(Failure {
                code: 4,
                message: format!("solver stopped after {} iterations at residual {:.3e}", s.iterations, s.residual),
            });
        }
        Err(e) => return Err(e.into()),
    };
    if let (Some(path), Some(s)) = (log, &solution) {
        write(path, &log_lines(&s.log))?;
    }
    if let Some(path) = svg {
        if b.dim() != Dim::Two {
            return Err(Failure { code: 2, message: "SVG output is only available for planar barriers".into() });
        }
        let scene = Scene { body: k.as_ref(), barrier: Some(&b), convexification: Some(&co) };
        write(path, &render(&scene, 600))?;
    }
    write(out, &polytope_json(&co))?;
    Ok(0)
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::True => 0,
        Verdict::False => 1,
        Verdict::Undecided => 5,
    }
}

fn check_cmd(barrier: &Path, body: &Path, mode: Mode, seed: u64, lines: u64) -> Result<u8, Failure> {
    let b = read_barrier(barrier)?;
    let k = read_polytope(body)?;
    let mut report = serde_json::Map::new();
    let mut codes = Vec::new();
    if mode != Mode::Strong {
        let weak = is_weak_barrier(&b, &k)?;
        codes.push(verdict_code(weak.verdict));
        report.insert("weak".into(), serde_json::to_value(&weak).expect("serializable"));
    }
    if mode != Mode::Weak {
        let strong = strong_barrier_mc(&b, &k, lines, seed)?;
        codes.push(if strong.misses == 0 { 0 } else { 1 });
        report.insert("strong".into(), serde_json::to_value(&strong).expect("serializable"));
    }
    println!("{}", to_json(&report));
    // Any False wins over Undecided, which wins over True.
    Ok(if codes.contains(&1) { 1 } else { codes.into_iter().max().unwrap_or(0) })
}

fn stability_cmd(barrier: &Path, body: &Path, eps: f64, csv: Option<&Path>) -> Result<u8, Failure> {
    let b = read_barrier(barrier)?;
    let k = read_polytope(body)?;
    let weak = is_weak_barrier(&b, &k)?;
    if !weak.is_true() {
        return Err(Failure {
            code: 1,
            message: format!("not a weak barrier (verdict {:?}, margin {:.3e})", weak.verdict, weak.margin),
        });
    }
    let report = stability_report(&b, &k, eps)?;
    if let Some(path) = csv {
        write(path, &report.beta_csv())?;
    }
    println!("{}", to_json(&report));
    Ok(0)
}

fn demo_cmd(name: &str) -> Result<u8, Failure> {
    let outcome = run_demo(name).expect("clap restricts the names")?;
    for c in &outcome.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        eprintln!("{tag} {}: {} (expected {})", c.name, c.value, c.expected);
    }
    println!("{}", to_json(&outcome));
    Ok(if outcome.passed() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Convexify { barrier, out, svg, body, log, tol, max_iter } => {
            let opts = SolverOptions { tol: *tol, max_iter: *max_iter, initial: None };
            convexify_cmd(barrier, out, svg.as_deref(), body.as_deref(), log.as_deref(), &opts)
        }
        Command::Check { barrier, body, mode, seed, lines } => check_cmd(barrier, body, *mode, *seed, *lines),
        Command::Stability { barrier, body, eps, csv } => stability_cmd(barrier, body, *eps, csv.as_deref()),
        Command::Demo { name } => demo_cmd(name),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

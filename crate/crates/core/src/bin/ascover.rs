use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ascover::astower::{self, Subspace, Tower};
use ascover::ffield::Divisor;
use ascover::json::tower_from_json;
use ascover::report::{self, Target};
use ascover::rrspace::RrSpace;
use ascover::{fixtures, planemodel, Error};

/// Artin-Schreier towers over F2: verification, point counts, genera,
/// Riemann-Roch spaces and plane models.
#[derive(Parser)]
#[command(name = "ascover", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the named check suite (all, e, serre50, lattice, planemodel, h, c1, c2, bound).
    Verify {
        #[arg(default_value = "all")]
        target: String,
        /// Also write the report as JSON ("-" for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Count degree-1 places of X_R over GF(2^n).
    Count {
        #[arg(long)]
        curve: PathBuf,
        /// Extension degree; with --max-n, counts for 1..=max-n instead.
        #[arg(long, required_unless_present = "max_n")]
        n: Option<u32>,
        #[arg(long, conflicts_with = "n")]
        max_n: Option<u32>,
        /// Coordinate mask, or comma-separated generator masks; default: everything.
        #[arg(long)]
        subspace: Option<String>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Genus of X_R by the conductor formula.
    Genus {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        subspace: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Riemann-Roch space L(G) on the base curve.
    Rr {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        divisor: String,
        /// Print the dimension only.
        #[arg(long, conflicts_with = "basis")]
        dim: bool,
        /// Print a basis (the default).
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Minimal polynomial of w_1···w_k over the base function field or over F2(x).
    Minpoly {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_enum, default_value = "xy")]
        over: Over,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Over {
    Xy,
    X,
}

/// Reads a tower file; a missing file named after a built-in fixture
/// (`serre.json`, `h.json`) falls back to the built-in copy.
fn load(path: &Path) -> Result<Tower, Error> {
    match std::fs::read_to_string(path) {
        Ok(text) => tower_from_json(&text),
        Err(e) => {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
            fixtures::by_name(stem).ok_or_else(|| Error::Io(format!("{}: {e}", path.display())))
        }
    }
}

fn subspace(t: &Tower, text: Option<&str>) -> Result<Subspace, Error> {
    match text {
        Some(s) => Subspace::parse(t.k(), s),
        None => Ok(Subspace::full(t.k())),
    }
}

fn emit(path: Option<&Path>, value: &serde_json::Value) -> Result<(), Error> {
    let Some(path) = path else { return Ok(()) };
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Json(e.to_string()))? + "\n";
    if path == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Verify { target, json, threads } => {
            let target: Target = target.parse()?;
            let r = report::verify(target, threads.max(1));
            if json.as_deref() != Some(Path::new("-")) {
                print!("{}", r.to_text());
            }
            if let Some(p) = json.as_deref() {
                let text = r.to_json() + "\n";
                if p == Path::new("-") {
                    print!("{text}");
                } else {
                    std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                }
            }
            Ok(if r.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Count { curve, n, max_n, subspace: sub, threads, json } => {
            let t = load(&curve)?;
            let r = subspace(&t, sub.as_deref())?;
            let ns: Vec<u32> = match (n, max_n) {
                (Some(n), _) => vec![n],
                (None, Some(m)) => (1..=m).collect(),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let mut rows = Vec::new();
            for n in ns {
                rows.push((n, astower::count_points(&t, &r, n, threads.max(1))?));
            }
            if rows.len() == 1 {
                println!("{}", rows[0].1);
            } else {
                for (n, c) in &rows {
                    println!("{n:>3}  {c}");
                }
            }
            let counts: Vec<_> = rows.iter().map(|(n, c)| json!({"n": n, "count": c})).collect();
            emit(json.as_deref(), &json!({"subspace": r.to_string(), "counts": counts}))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Genus { curve, subspace: sub, json } => {
            let t = load(&curve)?;
            let r = subspace(&t, sub.as_deref())?;
            let g = astower::genus(&t, &r)?;
            println!("{g}");
            emit(json.as_deref(), &json!({"subspace": r.to_string(), "genus": g}))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rr { curve, divisor, dim, basis: _, json } => {
            let t = load(&curve)?;
            let g = Divisor::parse(t.base(), &divisor)?;
            let space = RrSpace::new(t.base(), &g)?;
            let basis: Vec<String> = space.basis().iter().map(|f| f.to_string()).collect();
            if dim {
                println!("{}", space.dim());
            } else {
                for f in &basis {
                    println!("{f}");
                }
            }
            emit(
                json.as_deref(),
                &json!({"divisor": g.to_string(), "dim": space.dim(), "basis": basis}),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Minpoly { curve, over, json } => {
            let t = load(&curve)?;
            let coeffs = match over {
                Over::Xy => planemodel::octic_minpoly(&t)?,
                Over::X => planemodel::sedectic_minpoly(&t)?,
            };
            println!("{}", planemodel::format_poly(&coeffs, "T"));
            let list: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            emit(json.as_deref(), &json!({"degree": coeffs.len() - 1, "coefficients": list}))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

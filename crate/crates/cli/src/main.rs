//! `frac-hardy`: verification tables for the fractional Hardy toolkit.
//!
//! Exit codes: 0 all checks passed, 1 usage error, 2 verification failure.

mod commands;
mod table;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use table::{Format, Table};

const USAGE: u8 = 1;
const FAILED: u8 = 2;

/// Thread-count override for the parallel row computations.
const THREADS_ENV: &str = "HARDY_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "frac-hardy",
    version,
    about = "Numerical checks of the sharp fractional Hardy inequality"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Dimensions (comma separated).
    #[arg(long, global = true, value_delimiter = ',')]
    d: Vec<u32>,

    /// Values of alpha in (0, 2) (comma separated).
    #[arg(long, global = true, value_delimiter = ',')]
    alpha: Vec<f64>,

    /// Power exponents p (comma separated), combined with every alpha.
    #[arg(long, global = true, value_delimiter = ',')]
    p: Vec<f64>,

    /// Evaluation points for laplacian-check (comma separated).
    #[arg(long, global = true, value_delimiter = ',')]
    x: Vec<f64>,

    /// Cutoff parameters n for rayleigh (comma separated, increasing).
    #[arg(long, global = true, value_delimiter = ',')]
    n: Vec<u64>,

    /// First seed for hardy-fuzz.
    #[arg(long, global = true, default_value_t = 0)]
    seeds: u64,

    /// Number of seeds for hardy-fuzz.
    #[arg(long, global = true, default_value_t = 200)]
    count: u64,

    /// Relative quadrature tolerance (default depends on the subcommand).
    #[arg(long, global = true)]
    rel_tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output file; for `all`, a directory receiving one file per table.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
enum Command {
    /// kappa, A, killing coefficient and the constant identity per (d, alpha).
    Constants,
    /// gamma(alpha, p): closed form against quadrature.
    Gamma,
    /// Principal-value Laplacian of x^p against gamma(alpha, p) x^{p-alpha}.
    LaplacianCheck,
    /// Rayleigh quotients of the extremal sequence.
    Rayleigh,
    /// Hardy margins of seeded random piecewise-linear functions.
    HardyFuzz,
    /// Normalized tail-kernel integrals against the frozen constants.
    KernelBound,
    /// Every table above with default grids.
    All,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn validate(cli: &Cli) -> Result<(), String> {
    if let Some(a) = cli.alpha.iter().find(|a| !(**a > 0.0 && **a < 2.0)) {
        return Err(format!("alpha must lie in (0, 2), got {a}"));
    }
    if cli.d.contains(&0) {
        return Err("d must be at least 1".into());
    }
    if let Some(t) = cli.rel_tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(format!("rel-tol must lie in (0, 1), got {t}"));
        }
    }
    if let Some(x) = cli.x.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(format!("x must be positive, got {x}"));
    }
    if cli.n.iter().any(|&n| n < 2) || cli.n.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("n must be increasing and at least 2, got {:?}", cli.n));
    }
    if cli.seeds.checked_add(cli.count).is_none() {
        return Err("seed range overflows".into());
    }
    Ok(())
}

fn or_default<T: Clone>(given: &[T], default: impl FnOnce() -> Vec<T>) -> Vec<T> {
    if given.is_empty() {
        default()
    } else {
        given.to_vec()
    }
}

/// `(α, p)` pairs: the cartesian product of the flags, or a default grid.
fn exponent_pairs(cli: &Cli, default: impl FnOnce() -> Vec<(f64, f64)>) -> Result<Vec<(f64, f64)>, String> {
    if cli.alpha.is_empty() && cli.p.is_empty() {
        return Ok(default());
    }
    let alphas = or_default(&cli.alpha, commands::gamma_alphas);
    let mut out = Vec::new();
    for &a in &alphas {
        let ps = if cli.p.is_empty() {
            commands::gamma_exponents(a)
        } else {
            cli.p.clone()
        };
        for p in ps {
            if !(p > -1.0 && p < a) {
                return Err(format!("need -1 < p < alpha, got p={p} for alpha={a}"));
            }
            out.push((a, p));
        }
    }
    Ok(out)
}

fn run(cli: &Cli, command: Command) -> Result<Vec<Table>, Result<hardy_core::HardyError, String>> {
    let tol = |default: f64| cli.rel_tol.unwrap_or(default);
    let tables = match command {
        Command::Constants => {
            let ds = or_default(&cli.d, || vec![1, 2, 3, 5, 10]);
            vec![commands::constants(&ds, &or_default(&cli.alpha, commands::default_alphas)).map_err(Ok)?]
        }
        Command::Gamma => {
            let pairs = exponent_pairs(cli, || {
                commands::gamma_alphas()
                    .into_iter()
                    .flat_map(|a| commands::gamma_exponents(a).into_iter().map(move |p| (a, p)))
                    .collect()
            })
            .map_err(Err)?;
            vec![commands::gamma(&pairs, tol(1e-12)).map_err(Ok)?]
        }
        Command::LaplacianCheck => {
            let pairs = exponent_pairs(cli, || commands::LAPLACIAN_PAIRS.to_vec()).map_err(Err)?;
            let xs = or_default(&cli.x, || vec![0.5, 1.0, 4.0]);
            vec![commands::laplacian_check(&pairs, &xs, tol(1e-11)).map_err(Ok)?]
        }
        Command::Rayleigh => {
            let ns = or_default(&cli.n, || commands::SCAN_NS.to_vec());
            let alphas = or_default(&cli.alpha, || commands::SCAN_ALPHAS.to_vec());
            vec![commands::rayleigh(&ns, &alphas, tol(1e-8)).map_err(Ok)?]
        }
        Command::HardyFuzz => {
            let alphas = or_default(&cli.alpha, || commands::FUZZ_ALPHAS.to_vec());
            vec![commands::hardy_fuzz(cli.seeds, cli.count, &alphas, tol(1e-10)).map_err(Ok)?]
        }
        Command::KernelBound => vec![commands::kernel_bound(tol(1e-10)).map_err(Ok)?],
        Command::All => {
            let mut all = Vec::new();
            for c in [
                Command::Constants,
                Command::Gamma,
                Command::LaplacianCheck,
                Command::Rayleigh,
                Command::HardyFuzz,
                Command::KernelBound,
            ] {
                all.extend(run(cli, c)?);
            }
            all
        }
    };
    Ok(tables)
}

fn emit(cli: &Cli, tables: &[Table]) -> std::io::Result<()> {
    let ext = match cli.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    if cli.command == Command::All {
        if let Some(dir) = &cli.out {
            fs::create_dir_all(dir)?;
            for t in tables {
                fs::write(dir.join(format!("{}.{ext}", t.name)), t.render(cli.format))?;
            }
            return Ok(());
        }
    }
    let bytes = match (tables, cli.format) {
        ([single], f) => single.render(f),
        (many, Format::Csv) => {
            let mut buf = Vec::new();
            for (i, t) in many.iter().enumerate() {
                if i > 0 {
                    buf.push(b'\n');
                }
                writeln!(buf, "# {}", t.name)?;
                buf.extend(t.render(Format::Csv));
            }
            buf
        }
        (many, Format::Json) => {
            let obj: serde_json::Map<String, serde_json::Value> =
                many.iter().map(|t| (t.name.to_string(), t.to_json())).collect();
            let mut buf = serde_json::to_vec_pretty(&serde_json::Value::Object(obj))?;
            buf.push(b'\n');
            buf
        }
    };
    match &cli.out {
        Some(path) => fs::write(path, bytes),
        None => std::io::stdout().write_all(&bytes),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = validate(&cli) {
        return usage(msg);
    }
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => return usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")),
        }
    }
    let tables = match run(&cli, cli.command) {
        Ok(t) => t,
        Err(Err(msg)) => return usage(msg),
        Err(Ok(e)) => {
            eprintln!("verification failed: {e}");
            return ExitCode::from(FAILED);
        }
    };
    if let Err(e) = emit(&cli, &tables) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(FAILED);
    }
    for t in tables.iter().filter(|t| !t.passed) {
        eprintln!("verification failed: {}", t.name);
    }
    if tables.iter().all(|t| t.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAILED)
    }
}

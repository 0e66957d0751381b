use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use halphen_cli::experiments::{run_checks, run_figure1, run_figure2, run_solve, run_table1, SolveKind};
use halphen_cli::{emit, exit_code, Format, RunConfig, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "halphen", version, about = "Minimax approximation experiments for x^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Working precision in bits: 53 for f64, more selects double-double.
    #[arg(long, global = true, env = "HALPHEN_PRECISION_BITS", default_value_t = 53)]
    precision_bits: u32,
    /// Sample count for the rational solvers (at least 257).
    #[arg(long, global = true, default_value_t = 4096)]
    grid_size: usize,
    /// Solver tolerance; each experiment has its own default.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
    /// Also write an SVG plot (figure1 and figure2 only).
    #[arg(long, global = true)]
    plot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Polynomial minimax errors against the erfc model.
    Figure1 {
        /// Comma-separated powers.
        #[arg(long, value_delimiter = ',')]
        n: Vec<f64>,
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Rational (k, k) minimax errors against 2 H^(k+1/2).
    Figure2 {
        #[arg(long)]
        n: Option<f64>,
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Adaptive Chebyshev degrees of x^n.
    Table1,
    /// Verification suite.
    Checks,
    /// Single minimax solve for x^n on [0, 1].
    #[command(group(ArgGroup::new("kind").required(true).args(["poly", "rational"])))]
    Solve {
        #[arg(long)]
        poly: bool,
        #[arg(long)]
        rational: bool,
        #[arg(long)]
        n: f64,
        #[arg(long)]
        k: usize,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let c = cli.common;
    let cfg = RunConfig {
        precision_bits: c.precision_bits,
        grid_size: c.grid_size,
        tol: c.tol,
        out: c.out,
        format: c.format.parse::<Format>().unwrap_or_default(),
        plot: c.plot,
    };
    if let Err(e) = cfg.validate() {
        return usage(e);
    }
    let (name, rows) = match cli.command {
        Command::Figure1 { n, kmax } => {
            if n.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
                return usage("--n values must be positive");
            }
            ("figure1", run_figure1(&n, kmax, &cfg))
        }
        Command::Figure2 { n, kmax } => {
            if n.is_some_and(|v| !(v > 0.0 && v.is_finite())) {
                return usage("--n must be positive");
            }
            ("figure2", run_figure2(n, kmax, &cfg))
        }
        Command::Table1 => ("table1", run_table1(&cfg)),
        Command::Checks => ("checks", run_checks(&cfg)),
        Command::Solve { poly, n, k, .. } => {
            if !(n > 0.0 && n.is_finite()) {
                return usage("--n must be positive");
            }
            let kind = if poly { SolveKind::Poly } else { SolveKind::Rational };
            ("solve", run_solve(kind, n, k, &cfg))
        }
    };
    match emit(&rows, name, &cfg) {
        Ok(Some(p)) => eprintln!("plot written to {}", p.display()),
        Ok(None) => {
            if cfg.plot && !name.starts_with("figure") {
                eprintln!("note: --plot only applies to figure1 and figure2");
            }
        }
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    ExitCode::from(exit_code(&rows) as u8)
}

//! `vspaces`: check, convert and change the base of finite quantale-valued
//! spaces, and run the verification suites.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vspaces::Budget;

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "vspaces", version, about = "Workbench for finite quantale-valued closure, approach and convergence spaces")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Quantale file: the quantale checked by `check` without a target, or
    /// the anchor of a builtin map in `basechange`.
    #[arg(long, global = true, conflicts_with = "builtin")]
    pub quantale: Option<PathBuf>,
    /// Builtin quantale descriptor, e.g. `chain_frame:3` or
    /// `delta_grid:0,1:0,1/2,1:lukasiewicz`; same role as `--quantale`.
    #[arg(long, global = true)]
    pub builtin: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, global = true, default_value_t = 3)]
    pub max_exhaustive_size: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for independent checks (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Where to write the report (`verify`, `check`) or the converted
    /// structure (`convert`, `basechange`).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Global {
    pub fn budget(&self) -> Budget {
        Budget::new(self.max_exhaustive_size, self.samples as usize, self.seed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms of a quantale, space, convergence or map file.
    Check {
        /// File to check; without it, the quantale given by --quantale or --builtin.
        target: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = commands::Mode::Closure)]
        mode: commands::Mode,
    },
    /// Convert a space between the distance, tower and convergence presentations.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: commands::Presentation,
    },
    /// Apply the change-of-base functor of a map between quantales.
    Basechange {
        input: PathBuf,
        /// Builtin map name (iota, pi, o, sigma, tau, rho, lambda,
        /// downset.up, downset.sup, downset.down) or a map file.
        #[arg(long)]
        map: String,
        /// Reflect the image onto the lax algebras of the target quantale.
        #[arg(long)]
        reflect: bool,
    },
    /// Run a verification suite.
    Verify { suite: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let g = &cli.global;
    if let Some(w) = g.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: cannot start {w} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::Check { target, mode } => commands::check(g, target.as_deref(), *mode, echo.clone()),
        Command::Convert { input, to } => commands::convert(g, input, *to, echo.clone()),
        Command::Basechange { input, map, reflect } => commands::basechange(g, input, map, *reflect, echo.clone()),
        Command::Verify { suite } => commands::verify(g, suite, echo.clone()),
    };
    let mut report = result.unwrap_or_else(|e| Report::error(echo, e));
    if g.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let text = match g.format {
        Format::Text => report.render_text(),
        Format::Json => report.render_json(),
    };
    let writes_report = matches!(cli.command, Command::Check { .. } | Command::Verify { .. });
    match (&g.output, writes_report) {
        (Some(path), true) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
            if let Some(e) = &report.error {
                eprintln!("error: {e}");
            }
        }
        _ => print!("{text}"),
    }
    ExitCode::from(report.status.exit_code() as u8)
}

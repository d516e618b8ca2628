use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use glmn_cli::{run, Mode, RunConfig, Suite};

#[derive(Parser, Debug)]
#[command(
    name = "glmn",
    version,
    about = "Exact checks for the graded R-matrix, RLL relations, Drinfeld currents and Hopf structure of U_q[gl(m|n)^(1)]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one or more verification suites (`all` selects every suite).
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Symbolic,
    Sampled,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// ybe, rmatrix-props, rll, drinfeld, serre, hopf, negative or all
    #[arg(required = true)]
    suites: Vec<String>,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Modes per variable in the verification window.
    #[arg(long, default_value_t = 6)]
    trunc: usize,
    /// Extra stored modes on each side of the window (defaults to the window size).
    #[arg(long)]
    guard: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
    mode: ModeArg,
    /// Seed for the sampled mode.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Form tensor products without Koszul signs.
    #[arg(long)]
    no_grading: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock times (the report is then not reproducible).
    #[arg(long)]
    timings: bool,
}

fn config_of(args: &VerifyArgs) -> Result<RunConfig, String> {
    let mut suites = Vec::new();
    for s in &args.suites {
        if s == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(Suite::parse(s).map_err(|e| e.to_string())?);
        }
    }
    let mode = match args.mode {
        ModeArg::Symbolic => Mode::Symbolic,
        ModeArg::Sampled => Mode::Sampled,
    };
    Ok(RunConfig {
        m: args.m,
        n: args.n,
        trunc: args.trunc,
        guard: args.guard.unwrap_or(args.trunc),
        mode,
        seed: (mode == Mode::Sampled).then_some(args.seed),
        grading: !args.no_grading,
        suites,
        timings: args.timings,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let Command::Verify(args) = cli.command;
    let report = match config_of(&args).and_then(|c| run(&c).map_err(|e| e.to_string())) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = match args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(report.exit_code() as u8)
}

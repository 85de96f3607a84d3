use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use monadic_extension::job::{exit, Check, Format, JobConfig, ModeName};
use monadic_extension::{emit_report, parse_table, run_job, MonadKind};

#[derive(Clone, Copy, ValueEnum)]
enum MonadArg {
    Id,
    Exp,
    Lambda,
    Incl,
    Prob,
}

impl From<MonadArg> for MonadKind {
    fn from(m: MonadArg) -> Self {
        match m {
            MonadArg::Id => MonadKind::Id,
            MonadArg::Exp => MonadKind::Exp,
            MonadArg::Lambda => MonadKind::Lambda,
            MonadArg::Incl => MonadKind::Incl,
            MonadArg::Prob => MonadKind::Prob,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

/// Extend a binary operation along a monad and check the laws.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[arg(long, value_enum)]
    monad: MonadArg,
    /// JSON table: {"elements": [...], "table": [[...], ...]}
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated checks, or "all". Empty runs none.
    #[arg(long, default_value = "")]
    check: String,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Largest base over which carriers are listed.
    #[arg(long)]
    max_carrier: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    allow_nonassociative: bool,
    /// Record wall-clock time in the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
}

fn fail(code: i32, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("monadic-extension: {msg}");
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let monad = MonadKind::from(cli.monad);
    let text = match std::fs::read_to_string(&cli.input) {
        Ok(t) => t,
        Err(e) => return fail(exit::CONFIG, format!("{}: {e}", cli.input.display())),
    };
    let op = match parse_table(&text) {
        Ok(op) => op,
        Err(e) => return fail(exit::CONFIG, format!("{}: {e}", cli.input.display())),
    };
    let checks = match Check::parse_list(&cli.check, monad) {
        Ok(c) => c,
        Err(e) => return fail(exit::CONFIG, e),
    };
    let cfg = JobConfig {
        monad,
        input: cli.input.display().to_string(),
        checks,
        mode: match cli.mode {
            ModeArg::Exhaustive => ModeName::Exhaustive,
            ModeArg::Sampled => ModeName::Sampled,
        },
        seed: cli.seed,
        samples: cli.samples,
        max_carrier: cli.max_carrier,
        allow_nonassociative: cli.allow_nonassociative,
        record_timing: cli.timing,
    };
    let report = match run_job(&cfg, &op) {
        Ok(r) => r,
        Err(e) => return fail(exit::CONFIG, e),
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    print!("{}", emit_report(&report, format));
    ExitCode::from(report.exit_code() as u8)
}

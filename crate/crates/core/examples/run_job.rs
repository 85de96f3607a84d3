//! Runs a job the way the command-line tool does and prints the text report.

use monadic_extension::{emit_report, parse_table, run_job, Check, Format, JobConfig, MonadKind};

const INPUT: &str = r#"{"elements": ["e", "a"], "table": [["e", "a"], ["a", "e"]]}"#;

fn main() -> monadic_extension::Result<()> {
    let op = parse_table(INPUT)?;
    let mut cfg = JobConfig::new(MonadKind::Exp, "inline");
    cfg.checks = Check::parse_list("all", cfg.monad)?;
    let report = run_job(&cfg, &op)?;
    print!("{}", emit_report(&report, Format::Text));
    println!("exit code {}", report.exit_code());
    Ok(())
}

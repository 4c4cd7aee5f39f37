use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use rdefect::exec::field_spec;
use rdefect::{parse_field, run_session, Options};
use rdefect_core::verify::{campaign, GenParams, StatementId};

#[derive(Parser)]
#[command(name = "rdefect", version, about = "Regularity defects of local ring maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a session file (`.lrh`).
    Run {
        file: PathBuf,
        /// Emit the JSON report.
        #[arg(long)]
        json: bool,
        /// Truncation degree for jet computations.
        #[arg(long = "trunc", env = "RDEFECT_TRUNC_DEGREE", default_value_t = 6)]
        trunc: usize,
    },
    /// Check the statement catalog on random instances.
    Verify {
        /// Statement suite; `paper` is the full catalog.
        #[arg(long, default_value = "paper")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coefficient field, `QQ` or `GF(p)`.
        #[arg(long, default_value = "GF(5)")]
        field: String,
        /// Restrict to these statements (repeatable).
        #[arg(long = "statement")]
        statements: Vec<String>,
        #[arg(long = "trunc", env = "RDEFECT_TRUNC_DEGREE", default_value_t = 6)]
        trunc: usize,
        #[arg(long)]
        json: bool,
    },
    /// Describe a catalog statement and how it is checked.
    Explain { statement: String },
}

const INPUT_ERROR: u8 = 2;

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { file, json, trunc } => run(&file, json, trunc),
        Command::Verify { suite, trials, seed, field, statements, trunc, json } => {
            verify(&suite, trials, seed, &field, &statements, trunc, json)
        }
        Command::Explain { statement } => match statement.parse::<StatementId>() {
            Ok(id) => {
                print!("{}", id.explain());
                ExitCode::SUCCESS
            }
            Err(_) => {
                eprintln!("error: unknown statement `{statement}`");
                ExitCode::from(INPUT_ERROR)
            }
        },
    }
}

fn run(file: &PathBuf, json: bool, trunc: usize) -> ExitCode {
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(INPUT_ERROR);
        }
    };
    match run_session(&src, &Options { trunc_degree: trunc }) {
        Ok(report) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(d) => {
            eprint!("{}", d.render(&src, &file.display().to_string()));
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn verify(
    suite: &str,
    trials: usize,
    seed: u64,
    field: &str,
    statements: &[String],
    trunc: usize,
    json: bool,
) -> ExitCode {
    if suite != "paper" {
        eprintln!("error: unknown suite `{suite}` (available: paper)");
        return ExitCode::from(INPUT_ERROR);
    }
    if trials == 0 || !(2..=rdefect::exec::MAX_TRUNC_DEGREE).contains(&trunc) {
        eprintln!("error: --trials must be positive and --trunc in 2..={}", rdefect::exec::MAX_TRUNC_DEGREE);
        return ExitCode::from(INPUT_ERROR);
    }
    let field = match parse_field(field) {
        Ok(f) => field_spec(&f),
        Err(e) => {
            eprintln!("error: --field: {e}");
            return ExitCode::from(INPUT_ERROR);
        }
    };
    let ids: Vec<StatementId> = if statements.is_empty() {
        StatementId::ALL.to_vec()
    } else {
        match statements.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>() {
            Ok(ids) => ids,
            Err(_) => {
                eprintln!("error: unknown statement in {statements:?}");
                return ExitCode::from(INPUT_ERROR);
            }
        }
    };
    let params = GenParams { field, seed, trunc_degree: trunc, ..Default::default() };
    let start = Instant::now();
    let report = campaign(&params, trials, &ids);
    let elapsed = start.elapsed();
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{:<24} {:>6} {:>7} {:>5} {:>6}", "statement", "pass", "vacuous", "fail", "skip");
        for s in &report.statements {
            println!(
                "{:<24} {:>6} {:>7} {:>5} {:>6}",
                s.statement,
                s.passed,
                s.vacuous,
                s.failed,
                s.skipped_total()
            );
        }
        for f in &report.failures {
            println!("\nFAIL {} trial {} ({})", f.statement, f.trial, f.digest);
            if let rdefect_core::verify::Outcome::Fail { details } = &f.outcome {
                println!("  {details}");
            }
            print!("{}", f.session);
        }
        for e in &report.generation_errors {
            println!("generation error: {e}");
        }
        let reasons: Vec<String> =
            report.skip_reasons().iter().map(|(r, n)| format!("{}: {n}", r.name())).collect();
        println!(
            "\n{} trials, {} failed, {} skipped ({:.1}%){}",
            report.total,
            report.failed,
            report.skipped,
            100.0 * report.skip_rate,
            if reasons.is_empty() { String::new() } else { format!(" [{}]", reasons.join(", ")) }
        );
    }
    eprintln!("elapsed {:.2}s", elapsed.as_secs_f64());
    if report.failed == 0 && report.generation_errors.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

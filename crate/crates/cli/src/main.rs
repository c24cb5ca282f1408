use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use linkless_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let started = Instant::now();
    let result = run(cli, argv);
    let elapsed = started.elapsed();
    match result {
        Ok(outcome) => {
            println!("{}", serde_json::to_string_pretty(&outcome.report).expect("report serialises"));
            for line in &outcome.summary {
                eprintln!("{line}");
            }
            eprintln!("elapsed {:.2}s", elapsed.as_secs_f64());
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

use std::process::ExitCode;

use autonorm::cli::{run, summary_line, Cli, Command, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, diagnose) = match &cli.command {
        Command::Transform(a) => (a, false),
        Command::Diagnose(a) => (a, true),
    };
    let result = RunConfig::from_args(args, diagnose).and_then(|cfg| run(&cfg));
    match result {
        Ok(outcome) => {
            for r in &outcome.reports {
                println!("{}", summary_line(r));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("autonorm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

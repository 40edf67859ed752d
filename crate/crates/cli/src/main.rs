use std::process::ExitCode;

use clap::Parser;
use lierinehart_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.report);
            } else {
                println!("{}", outcome.human());
            }
            outcome.exit_code
        }
        Err(e) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() })
                );
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

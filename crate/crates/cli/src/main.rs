use std::process::ExitCode;

use clap::Parser;
use tdm_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            if let Some(path) = cli.command.output() {
                if let Err(e) = std::fs::write(path, outcome.output_text()) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            print!("{}", outcome.report);
            eprintln!("{}", outcome.summary);
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

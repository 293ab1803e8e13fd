use std::process::ExitCode;

use clap::Parser;
use relq_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("relq: at least one claim failed its check");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("relq: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

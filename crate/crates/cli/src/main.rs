use std::process::ExitCode;

use clap::Parser;
use gqnm_cli::{run, Cli};

fn main() -> ExitCode {
    // usage errors share exit code 1 with config errors; 2 is reserved for
    // unsupported theory and infeasible power targets
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gqnm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

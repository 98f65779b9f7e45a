use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use feynman_gw_cli::{run, CliError, Outcome, RunConfig, EXIT_OK};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::input("usage", e.render().to_string().trim_end());
            return finish(Outcome::error(&err), None);
        }
    };
    let outcome = run(&config);
    finish(outcome, config.output.as_deref())
}

fn finish(outcome: Outcome, output: Option<&std::path::Path>) -> ExitCode {
    let mut outcome = outcome;
    if outcome.exit == EXIT_OK {
        let written = match output {
            Some(path) => std::fs::write(path, &outcome.stdout),
            None => std::io::stdout().write_all(outcome.stdout.as_bytes()),
        };
        if let Err(e) = written {
            outcome = Outcome::error(&CliError::input("io", format!("cannot write output: {e}")));
        }
    }
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.exit as u8)
}

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use padelin_cli::{run, Cli, EXIT_INVALID};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("padelin: {e}");
            return ExitCode::from(e.code as u8);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.rendered).and_then(|()| match &outcome.manifest {
            Some(m) => std::fs::write(path.with_extension("manifest.json"), m),
            None => Ok(()),
        }),
        None => std::io::stdout().write_all(outcome.rendered.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("padelin: cannot write report: {e}");
        return ExitCode::from(EXIT_INVALID as u8);
    }
    if let Some(why) = &outcome.diagnostic {
        eprintln!("padelin: falsified: {why}");
    }
    ExitCode::from(outcome.code as u8)
}

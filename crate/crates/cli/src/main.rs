use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use dealmix_cli::{run, CliError, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    if let Some(threads) = config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    match execute(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(config: &RunConfig) -> Result<(), CliError> {
    let mut buffer = Vec::new();
    run(config, &mut buffer)?;
    match &config.out {
        Some(path) => {
            fs::write(path, &buffer)?;
            eprintln!("wrote {}", path.display());
        }
        None => io::stdout().lock().write_all(&buffer)?,
    }
    Ok(())
}

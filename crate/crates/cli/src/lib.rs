//! Command-line front end for `dunkl-bose`: argument parsing, grids and
//! table output.

pub mod args;
pub mod commands;
pub mod error;
pub mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};

pub use args::Cli;
pub use error::{CliError, CliResult};

/// Runs a parsed invocation and writes its table to the chosen sink.
pub fn execute(cli: &Cli) -> CliResult<()> {
    let table = commands::run(&cli.command)?;
    let output = cli.command.output();
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(output.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            table.write(output.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

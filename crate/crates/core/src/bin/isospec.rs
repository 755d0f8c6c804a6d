use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use isospec::cli::{execute, Cli};

fn main() -> ExitCode {
    let out = execute(Cli::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}

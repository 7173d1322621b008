use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ordqe_cli::{run, Cli};

fn main() -> ExitCode {
    let report = run(&Cli::parse());
    print!("{}", report.stdout);
    eprint!("{}", report.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(report.code)
}

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = golod_cli::args::Cli::parse();
    let out = golod_cli::run(&cli);
    print!("{}", out.stdout);
    std::io::stdout().flush().ok();
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    ExitCode::from(out.code)
}

use std::process::ExitCode;

use clap::Parser;
use compat_triples::cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("compat: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    let outcome = run(&cli);
    print!("{}", outcome.stdout);
    ExitCode::from(outcome.code as u8)
}

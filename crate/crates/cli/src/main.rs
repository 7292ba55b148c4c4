use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hamming_terwilliger_cli::{run, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let mut out = std::io::stdout().lock();
    let code = run(&config, &mut out, &mut std::io::stderr());
    let _ = out.flush();
    ExitCode::from(code as u8)
}

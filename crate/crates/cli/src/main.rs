use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fqvar_cli::{exit, run, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    if let Some(jobs) = cfg.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(exit::INPUT_ERROR as u8);
        }
    }
    let out = run(&cfg);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}

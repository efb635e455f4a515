use std::process::ExitCode;

use clap::Parser;
use ewh_nexus::cli::{run, Args};

fn main() -> ExitCode {
    let result = Args::parse().into_manifest().and_then(|m| run(&m));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ewh: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

//! Standalone checker for `.nct` files, built without the engine.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cotame_core::DEFAULT_DEGREE_CAP;

#[derive(Parser)]
#[command(name = "cotame-verify", about = "Check a normal co-tameness certificate file")]
struct Args {
    file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    cap: u32,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let v = cotame::verify::verify_file(&args.file, Some(args.cap));
    println!("{}", v.report);
    ExitCode::from(v.verdict.exit_code() as u8)
}

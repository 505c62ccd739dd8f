use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cotame::commands::{self, Config, Outcome};
use cotame::corpus::DEFAULT_SEED;
use cotame::text::parse_field;
use cotame::{CliError, Result};
use cotame_core::DEFAULT_DEGREE_CAP;

/// Polynomial automorphisms: queries, normal co-tameness certificates and checks.
///
/// Maps are written `[Q,3] (x1+2, x2+x1^2, x3)` or as factored words such as
/// `[Q,2] E(2; x1^2) * L[[0,1],[-1,0]]`. An argument starting with `@` is read
/// from the named file.
#[derive(Parser)]
#[command(name = "cotame", version)]
struct Cli {
    /// Coefficient field for inputs without a `[F,n]` header: Q, F<q> or F<q>/<modulus>.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Total-degree cap for expansions.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    cap: u32,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output path for certificates.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Number of multiples tried when probing for a noncommuting translation.
    #[arg(long, global = true)]
    probe_bound: Option<u32>,
    /// Units scanned when a construction must pick one.
    #[arg(long, global = true, default_value_t = 64)]
    unit_bound: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Membership flags, degree, Jacobian and vector degree.
    Classify { map: String },
    /// The composite `a` then `b`.
    Compose { a: String, b: String },
    /// The exact inverse.
    Invert { map: String },
    /// Jacobian determinant.
    Jacobian { map: String },
    /// Vector degree of a triangular map.
    Vd { map: String },
    /// `exp(F D)` for a triangular derivation `D(q1, ..., qn)` with `D(F) = 0`.
    Exp { f: String, d: String },
    /// Certificate that the normal closure of a special map contains a nontrivial elementary map.
    Certify { map: String },
    /// Certificate that an elementary map lies in the normal closure of special linear maps.
    Slin { map: String },
    /// Check a certificate file. Exit 0 PASS, 1 FAIL, 2 INDETERMINATE.
    Verify { file: PathBuf },
    /// Run the word identity suite.
    Identities,
}

fn arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?.trim().to_string()),
        None => Ok(s.to_string()),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    if cli.cap == 0 {
        return Err(CliError::Usage("--cap must be positive".into()));
    }
    let cfg = Config {
        field: parse_field(&cli.field)?,
        degree_cap: cli.cap,
        probe_bound_override: cli.probe_bound,
        unit_search_bound: cli.unit_bound,
        seed: cli.seed,
        output: cli.out,
    };
    match cli.cmd {
        Cmd::Classify { map } => commands::classify(&cfg, &arg(&map)?),
        Cmd::Compose { a, b } => commands::compose(&cfg, &arg(&a)?, &arg(&b)?),
        Cmd::Invert { map } => commands::invert(&cfg, &arg(&map)?),
        Cmd::Jacobian { map } => commands::jacobian(&cfg, &arg(&map)?),
        Cmd::Vd { map } => commands::vd(&cfg, &arg(&map)?),
        Cmd::Exp { f, d } => commands::exp(&cfg, &arg(&f)?, &arg(&d)?),
        Cmd::Certify { map } => commands::certify(&cfg, &arg(&map)?),
        Cmd::Slin { map } => commands::slin(&cfg, &arg(&map)?),
        Cmd::Verify { file } => Ok(commands::verify(&cfg, &file)),
        Cmd::Identities => commands::identities(&cfg),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(o) => {
            let _ = std::io::stdout().write_all(o.stdout.as_bytes());
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}

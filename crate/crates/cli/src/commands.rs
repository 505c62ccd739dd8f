//! Subcommand implementations. Each returns the text to print; `main` maps
//! errors to exit codes.

use std::path::PathBuf;

use cotame_core::cert::Certificate;
use cotame_core::{Error, Field, DEFAULT_DEGREE_CAP};
use cotame_engine::cotame::{certify_normally_cotame_with, Options};
use cotame_engine::error::EngineError;
use cotame_engine::slin::slin_from_elementary_bounded;

use crate::corpus::DEFAULT_SEED;
use crate::error::{CliError, Result};
use crate::text::{fmt_endo, fmt_factored, fmt_poly, fmt_tuple, parse_automorphism, parse_derivation, parse_poly, AutoInput};
use crate::{identities, nct, verify};

#[derive(Clone, Debug)]
pub struct Config {
    pub field: Field,
    pub degree_cap: u32,
    pub probe_bound_override: Option<u32>,
    pub unit_search_bound: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            field: Field::rationals(),
            degree_cap: DEFAULT_DEGREE_CAP,
            probe_bound_override: None,
            unit_search_bound: 64,
            seed: DEFAULT_SEED,
            output: None,
        }
    }
}

impl Config {
    fn cap(&self) -> Option<u32> {
        Some(self.degree_cap)
    }

    fn parse(&self, text: &str) -> Result<AutoInput> {
        parse_automorphism(text, Some(&self.field))
    }
}

/// Text and exit status of a finished command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, code: 0 }
    }
}

/// `2` for exhausted degree caps, `1` for every other error.
pub fn exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Algebra(Error::DegreeCapExceeded { .. }) | CliError::Engine(EngineError::Algebra(Error::DegreeCapExceeded { .. })) => 2,
        _ => 1,
    }
}

pub fn classify(cfg: &Config, text: &str) -> Result<Outcome> {
    let input = cfg.parse(text)?;
    let e = input.expand(cfg.cap())?;
    let c = e.classify();
    let mut out = format!("map: {}\ndegree: {}\njacobian: {}\n", fmt_endo(&e), e.total_degree(), fmt_poly(&e.jacobian_det()));
    for (name, v) in c.flags() {
        out.push_str(&format!("{name}: {}\n", if v { "yes" } else { "no" }));
    }
    if let Ok(vd) = e.vector_degree() {
        out.push_str(&format!("vd: {vd}\n"));
    }
    Ok(Outcome::ok(out))
}

pub fn compose(cfg: &Config, a: &str, b: &str) -> Result<Outcome> {
    let a = cfg.parse(a)?.expand(cfg.cap())?;
    let b = cfg.parse(b)?.expand(cfg.cap())?;
    if a.field() != b.field() {
        return Err(Error::FieldMismatch.into());
    }
    if a.n() != b.n() {
        return Err(CliError::Arity { expected: a.n(), found: b.n() });
    }
    Ok(Outcome::ok(format!("{}\n", fmt_endo(&a.compose_capped(&b, cfg.cap())?))))
}

pub fn invert(cfg: &Config, text: &str) -> Result<Outcome> {
    let out = match cfg.parse(text)? {
        AutoInput::Factored(w) => {
            let inv = w.inverse();
            format!("{}\n{}\n", fmt_factored(&inv), fmt_endo(&inv.expand_capped(cfg.cap())?))
        }
        AutoInput::Expanded(e) => format!("{}\n", fmt_endo(&e.inverse_structured()?)),
    };
    Ok(Outcome::ok(out))
}

pub fn jacobian(cfg: &Config, text: &str) -> Result<Outcome> {
    let e = cfg.parse(text)?.expand(cfg.cap())?;
    Ok(Outcome::ok(format!("{}\n", fmt_poly(&e.jacobian_det()))))
}

pub fn vd(cfg: &Config, text: &str) -> Result<Outcome> {
    let e = cfg.parse(text)?.expand(cfg.cap())?;
    Ok(Outcome::ok(format!("{}\n", e.vector_degree()?)))
}

pub fn exp(cfg: &Config, f: &str, d: &str) -> Result<Outcome> {
    let d = parse_derivation(d, &cfg.field)?;
    let f = parse_poly(f, &cfg.field, d.n())?;
    if !d.kernel_check(&f) {
        return Err(Error::KernelViolation.into());
    }
    Ok(Outcome::ok(format!("{}\n", fmt_endo(&d.exp_automorphism(&f)?))))
}

fn emit(cfg: &Config, cert: &Certificate, input: &str) -> Result<Outcome> {
    let text = nct::serialize(cert);
    let Some(path) = &cfg.output else {
        return Ok(Outcome::ok(text));
    };
    std::fs::write(path, &text)?;
    let mut out = format!("certified: {input}\n");
    for (k, v) in &cert.meta {
        out.push_str(&format!("{k}: {v}\n"));
    }
    out.push_str(&format!("steps: {}\n", cert.steps.len()));
    if let Some(t) = cert.terminal_value() {
        out.push_str(&format!("terminal: {} {}\n", cert.label(cert.terminal), fmt_tuple(t)));
    }
    out.push_str(&format!("wrote: {}\n", path.display()));
    Ok(Outcome::ok(out))
}

pub fn certify(cfg: &Config, text: &str) -> Result<Outcome> {
    let input = cfg.parse(text)?;
    let w = input.to_factored()?;
    let opts = Options { cap: cfg.cap(), probe_bound: cfg.probe_bound_override };
    let cert = certify_normally_cotame_with(&w, &opts)?;
    emit(cfg, &cert, &fmt_factored(&w))
}

/// Certificate that an elementary map lies in the normal closure of special linear maps.
pub fn slin(cfg: &Config, text: &str) -> Result<Outcome> {
    let e = cfg.parse(text)?.expand(cfg.cap())?;
    let (i, f) = e
        .as_elementary()
        .ok_or_else(|| CliError::Usage("slin expects an elementary map (x1, .., x_i + f, .., xn)".into()))?;
    let cert = slin_from_elementary_bounded(e.field(), i, &f, cfg.unit_search_bound)?;
    emit(cfg, &cert, &fmt_endo(&e))
}

pub fn verify(cfg: &Config, path: &std::path::Path) -> Outcome {
    let v = verify::verify_file(path, cfg.cap());
    Outcome { stdout: format!("{}\n", v.report), code: v.verdict.exit_code() }
}

pub fn identities(cfg: &Config) -> Result<Outcome> {
    let results = identities::run_suite(cfg.seed)?;
    let mut out = String::new();
    let mut code = 0;
    for r in &results {
        out.push_str(&format!("{r}\n"));
        if !r.passed() {
            code = 1;
        }
    }
    out.push_str(if code == 0 { "identities: PASS\n" } else { "identities: FAIL\n" });
    Ok(Outcome { stdout: out, code })
}

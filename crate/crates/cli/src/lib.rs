//! Command-line front end for `nullframe`.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, all checks passed |
//! | 1 | a verification check failed |
//! | 2 | invalid flags, config file, or model parameters |
//! | 3 | the curve is geodesic, so no unique distinguished frame exists |
//! | 4 | slant constant `a` is zero |
//! | 5 | a value became non-finite |
//! | 6 | Lie example parameters outside `ca > 0`, `c ≠ ±1/a²` |

pub mod commands;
pub mod config;
pub mod emit;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use nullframe::GeometryError;

use config::{Cli, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_GEODESIC: i32 = 3;
pub const EXIT_ZERO_SLANT: i32 = 4;
pub const EXIT_NON_FINITE: i32 = 5;
pub const EXIT_DOMAIN: i32 = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

pub fn exit_code(e: &GeometryError) -> i32 {
    use GeometryError::*;
    match e {
        Config(_) | ZeroLieParameters | DegenerateMetric | Asymmetric { .. } | WrongSignature { .. } => EXIT_CONFIG,
        GeodesicCurve { .. } => EXIT_GEODESIC,
        ZeroSlant => EXIT_ZERO_SLANT,
        NonFinite { .. } => EXIT_NON_FINITE,
        OrientationDomain | DegenerateB => EXIT_DOMAIN,
        TangentVanishes { .. }
        | DegenerateBasis { .. }
        | InvalidCurve(_)
        | NotRepresentable(_)
        | TraceZero
        | NotProjectiveFamily { .. } => EXIT_VERIFY_FAILED,
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn write_output(cfg: &RunConfig, body: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::config(format!("cannot write output: {e}")))
        }
    }
}

/// Parses `args`, runs the command, writes its output, and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = RunConfig::resolve(cli).and_then(|cfg| {
        let out = commands::execute(&cfg)?;
        let (body, side) = emit::render(&out, cfg.output);
        write_output(&cfg, &body)?;
        if let Some(side) = side {
            eprint!("{side}");
        }
        Ok(out.passed)
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VERIFY_FAILED,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

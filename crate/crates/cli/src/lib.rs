//! Library side of the `selmer` command-line tool: specification
//! parsing, trace serialization, and the command implementations. The
//! binary in `main.rs` is a thin clap dispatcher over these.

pub mod commands;
pub mod expr;
pub mod spec;
pub mod trace;

use std::fmt;
use std::path::PathBuf;

/// Command failures carrying the intended process exit code:
/// 1 for runtime/verification failures, 2 for usage and parse errors.
#[derive(Debug)]
pub struct CliError {
    pub exit_code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError { exit_code: 2, message: msg.into() }
    }

    pub fn runtime(msg: impl Into<String>) -> Self {
        CliError { exit_code: 1, message: msg.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

/// Writes to `--out` when given, stdout otherwise.
pub fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Number of decimal places that certify the requested precision
/// target: the smallest p with 10^-p <= precision.
pub fn precision_places(precision: &selmer_core::Rational) -> u32 {
    use selmer_core::rational::pow10_neg;
    if precision >= &selmer_core::Rational::from_integer(1.into()) {
        return 0;
    }
    let mut p = 1u32;
    while pow10_neg(p) > *precision && p < 200 {
        p += 1;
    }
    p
}

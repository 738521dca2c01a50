//! Batch front-end: family selection with the size guard, the SCA file
//! format, and the deterministic reports behind the `superdex` commands.

pub mod report;
pub mod sca;

use std::path::PathBuf;

use superfunc::Family;
use thiserror::Error;

pub use report::{bench_report, build_file, derivations_report, dex_report, family_derivations, fingerprint_report, full_report, identify_report, slug, DexOutput, Report};
pub use sca::{parse_sca, write_sca, ScaError, ScaFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ScaError },
    #[error("{stage}: {message}")]
    Stage { stage: &'static str, message: String },
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 for verification or pipeline failures, 2 for usage and input errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Stage { .. } | CliError::Verification(_) => 1,
            _ => 2,
        }
    }

    pub fn stage(stage: &'static str, e: impl std::fmt::Display) -> Self {
        CliError::Stage { stage, message: e.to_string() }
    }
}

pub const MIN_H: usize = 4;
pub const MAX_H: usize = 7;
pub const MAX_LE: usize = 3;

/// Resolves the family arguments and enforces the verified size range
/// unless `override_size` is set.
pub fn select_family(kind: &str, form: Option<&str>, even: Option<usize>, odd: Option<usize>, n: Option<usize>, override_size: bool) -> Result<Family, CliError> {
    let usage = |m: String| CliError::Usage(m);
    match kind {
        "h" => {
            let (a, b) = (even.unwrap_or(0), odd.unwrap_or(0));
            if n.is_some() {
                return Err(usage("--n applies to le only".into()));
            }
            if !override_size && !(MIN_H..=MAX_H).contains(&(a + b)) {
                return Err(usage(format!("a+b = {} is outside {MIN_H}..={MAX_H}; pass --override-size to continue", a + b)));
            }
            Family::h(form.unwrap_or("Pi"), a, b).map_err(|e| usage(e.to_string()))
        }
        "le" => {
            if form.is_some() || even.is_some() || odd.is_some() {
                return Err(usage("le takes only --n".into()));
            }
            let n = n.ok_or_else(|| usage("le needs --n".into()))?;
            if !override_size && !(2..=MAX_LE).contains(&n) {
                return Err(usage(format!("le n = {n} is outside 2..={MAX_LE}; pass --override-size to continue")));
            }
            Family::le(n).map_err(|e| usage(e.to_string()))
        }
        other => Err(usage(format!("unknown family {other:?}, expected h or le"))),
    }
}

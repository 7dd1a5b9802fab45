//! Frozen empirical constants.
//!
//! The bound shapes implemented in this crate come from asymptotic statements
//! whose implied constants are never written down.  Every such constant is
//! fitted once by `lprog calibrate`, frozen into `constants/frozen.json`
//! (checked into the repo), and loaded from there at run time; reports embed
//! the file's SHA-256 so results are traceable to the exact constants used.
//! Set `LPROG_CONSTANTS=/path/to/file.json` to override the built-in copy.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

pub const EMBEDDED_CONSTANTS: &str = include_str!("../constants/frozen.json");
pub const ENV_OVERRIDE: &str = "LPROG_CONSTANTS";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FrozenConstants {
    /// Stand-in for the truncated-series O-constant; refit on the conformance
    /// grid by calibration, default 8.0 before fitting.
    pub truncation_constant_factor: f64,
    /// Default exponent for the P1 mollifier length X = T^theta.
    pub theta_default: f64,
    /// Nonvanishing policy: doublings of x before a point stays undetermined.
    pub scan_retry_cap: u32,
    /// Base offset added to C|t|/2pi when a scan chooses its first x.
    pub scan_x_base: f64,
    /// firstNonzeroIndex asserts k <= safety_factor * theorem bound.
    pub first_nonzero_safety_factor: f64,
    /// Hard cap on the first-nonzero scan length (exhaustion finding beyond).
    pub first_nonzero_scan_cap: u64,
    /// Interval-sum ratio cap (exact / bound shape) on the E_j grid.
    pub lemma41_ratio_max: f64,
    /// Weighted min-sum ratio caps over the declared parameter grid.
    pub prop42_general_ratio_max: f64,
    pub prop42_beta_ge1_ratio_max: f64,
    /// Growth-gauge comparison cap: x <= C * y / w_{L-eps}(y) on the grid.
    pub lemma61c_ratio_max: f64,
    /// Frozen |S1(T,P1)/T - 1| per T on the q=3, alpha=0, beta=1 run.
    pub first_moment_golden: BTreeMap<String, f64>,
    /// Frozen max of S2(T,P1)/(T log T) over the same T grid.
    pub second_moment_ratio_max: f64,
    /// Frozen lower bound for nonzeroCount/(T/log T) on the T=200 scan.
    pub nonvanish_ratio_min: f64,
    /// Frozen relative deviation cap for the Bauer quadrature check.
    pub bauer_deviation_max: f64,
    /// Recorded LHS/RHS margin of the Gallagher grid check (diagnostic).
    pub gallagher_margin: f64,
}

/// A loaded constants file plus its provenance.
#[derive(Debug, Clone)]
pub struct ConstantsFile {
    pub constants: FrozenConstants,
    pub sha256: String,
    pub source: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn parse(text: &str, source: &str) -> Result<ConstantsFile> {
    let constants: FrozenConstants = serde_json::from_str(text)
        .map_err(|e| Error::Config(format!("constants file {source}: {e}")))?;
    Ok(ConstantsFile {
        constants,
        sha256: sha256_hex(text.as_bytes()),
        source: source.to_string(),
    })
}

/// Loads the constants: the LPROG_CONSTANTS path when set, else the copy
/// compiled in from constants/frozen.json.
pub fn load() -> Result<ConstantsFile> {
    match std::env::var(ENV_OVERRIDE) {
        Ok(path) if !path.is_empty() => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
            parse(&text, &path)
        }
        _ => parse(EMBEDDED_CONSTANTS, "builtin"),
    }
}

pub fn load_from(path: &str) -> Result<ConstantsFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
    parse(&text, path)
}

/// Serializes constants in the canonical on-disk form (pretty JSON, trailing
/// newline) so calibration reruns are byte-stable.
pub fn to_canonical_json(constants: &FrozenConstants) -> String {
    let mut s = serde_json::to_string_pretty(constants).expect("constants serialize");
    s.push('\n');
    s
}

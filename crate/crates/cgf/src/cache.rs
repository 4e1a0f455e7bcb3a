//! Optional on-disk cache of cyclotomic polynomials.
//!
//! When `CGF_CACHE_DIR` is set, `cyclotomic.json` in that directory is
//! loaded before a command runs and rewritten afterwards. The file maps
//! each index to its coefficient list, low degree first.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use cgf_core::cyclotomic::{cached, preload};
use cgf_core::IntPoly;
use num_bigint::BigInt;
use serde_json::Value;

use crate::output::poly_json;
use crate::{CliError, Result};

pub const ENV_VAR: &str = "CGF_CACHE_DIR";
const FILE_NAME: &str = "cyclotomic.json";

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(ENV_VAR).map(PathBuf::from)
}

fn coeff(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Seeds the in-memory cache; returns how many entries were accepted.
/// A missing file is not an error.
pub fn load(dir: &Path) -> Result<usize> {
    let path = dir.join(FILE_NAME);
    if !path.exists() {
        return Ok(0);
    }
    let map: BTreeMap<String, Vec<Value>> = serde_json::from_str(&fs::read_to_string(&path)?)?;
    let mut n_loaded = 0;
    for (key, coeffs) in map {
        let n: u64 = key
            .parse()
            .map_err(|_| CliError::Usage(format!("bad cache key `{key}` in {}", path.display())))?;
        let coeffs = coeffs
            .iter()
            .map(coeff)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CliError::Usage(format!("bad coefficients for {n} in {}", path.display())))?;
        preload(n, IntPoly::from_coeffs(coeffs))?;
        n_loaded += 1;
    }
    Ok(n_loaded)
}

/// Writes every cached polynomial; returns the number written.
pub fn save(dir: &Path) -> Result<usize> {
    fs::create_dir_all(dir)?;
    let entries = cached();
    let map: serde_json::Map<String, Value> = entries
        .iter()
        .map(|(n, p)| (n.to_string(), poly_json(p)))
        .collect();
    fs::write(dir.join(FILE_NAME), serde_json::to_string(&map)?)?;
    Ok(entries.len())
}

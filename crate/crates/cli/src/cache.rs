//! On-disk Painlevé table.
//!
//! Layout (little-endian): `b"TWLAB"`, format version `u32`, `s_min`,
//! `s_max`, `tol` as `f64`, grid length `u64`, then the columns s, q, q′,
//! E, R, J, each `len` `f64` values.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use twlab::PainleveTable;

use crate::error::{CliError, CliResult};

pub const MAGIC: &[u8; 5] = b"TWLAB";
pub const FORMAT_VERSION: u32 = 1;
pub const DEFAULT_PATH: &str = "tw_cache.bin";
pub const ENV_VAR: &str = "TWLAB_CACHE";

const HEADER_LEN: usize = 5 + 4 + 3 * 8 + 8;

/// Why a cache file could not be used.
#[derive(Debug, Clone, PartialEq)]
pub enum CacheDefect {
    BadMagic,
    Version(u32),
    Truncated,
    Inconsistent(String),
}

impl std::fmt::Display for CacheDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheDefect::BadMagic => write!(f, "not a twlab cache file"),
            CacheDefect::Version(v) => write!(f, "format version {v}, expected {FORMAT_VERSION}"),
            CacheDefect::Truncated => write!(f, "file truncated"),
            CacheDefect::Inconsistent(m) => write!(f, "inconsistent contents: {m}"),
        }
    }
}

/// Outcome of [`load_or_build`].
#[derive(Debug, Clone, PartialEq)]
pub enum CacheStatus {
    Loaded,
    Built,
    Rebuilt(String),
}

pub fn encode(table: &PainleveTable) -> Vec<u8> {
    let n = table.len();
    let mut out = Vec::with_capacity(HEADER_LEN + 6 * 8 * n);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    for v in [table.s_min(), table.s_max(), table.tol()] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&(n as u64).to_le_bytes());
    for col in [table.grid(), table.q(), table.q_prime(), table.e(), table.r(), table.j()] {
        for v in col {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

fn f64_at(bytes: &[u8], pos: usize) -> f64 {
    f64::from_le_bytes(bytes[pos..pos + 8].try_into().expect("8 bytes"))
}

pub fn decode(bytes: &[u8]) -> Result<PainleveTable, CacheDefect> {
    if bytes.len() < 5 || &bytes[..5] != MAGIC {
        return Err(CacheDefect::BadMagic);
    }
    if bytes.len() < HEADER_LEN {
        return Err(CacheDefect::Truncated);
    }
    let version = u32::from_le_bytes(bytes[5..9].try_into().expect("4 bytes"));
    if version != FORMAT_VERSION {
        return Err(CacheDefect::Version(version));
    }
    let (s_min, s_max, tol) = (f64_at(bytes, 9), f64_at(bytes, 17), f64_at(bytes, 25));
    let n = u64::from_le_bytes(bytes[33..41].try_into().expect("8 bytes"));
    let expected = (n as u128) * 48 + HEADER_LEN as u128;
    if (bytes.len() as u128) < expected {
        return Err(CacheDefect::Truncated);
    }
    if (bytes.len() as u128) > expected {
        return Err(CacheDefect::Inconsistent("trailing bytes".into()));
    }
    let n = n as usize;
    let col = |c: usize| -> Vec<f64> {
        (0..n).map(|i| f64_at(bytes, HEADER_LEN + 8 * (c * n + i))).collect()
    };
    let table = PainleveTable::from_columns(col(0), col(1), col(2), col(3), col(4), col(5), tol)
        .map_err(|e| CacheDefect::Inconsistent(e.to_string()))?;
    if table.s_min() != s_min || table.s_max() != s_max {
        return Err(CacheDefect::Inconsistent("header window does not match grid".into()));
    }
    Ok(table)
}

/// Cache location: explicit flag, then `TWLAB_CACHE`, then `./tw_cache.bin`.
pub fn resolve_path(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    match std::env::var_os(ENV_VAR) {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => PathBuf::from(DEFAULT_PATH),
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

/// Loads the table at `path` if it is valid and was built for the
/// requested window and tolerance; otherwise builds and stores it. A
/// failed write is reported on `warn` but does not fail the call.
pub fn load_or_build(
    path: &Path,
    s_min: f64,
    s_max: f64,
    tol: f64,
    warn: &mut dyn Write,
) -> CliResult<(PainleveTable, CacheStatus)> {
    let mut reason = None;
    match fs::read(path) {
        Ok(bytes) => match decode(&bytes) {
            Ok(t) if t.s_min() == s_min && t.s_max() == s_max && t.tol() == tol => {
                return Ok((t, CacheStatus::Loaded));
            }
            Ok(_) => reason = Some("built for different parameters".to_string()),
            Err(d) => reason = Some(d.to_string()),
        },
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
        Err(e) => reason = Some(e.to_string()),
    }
    let table = PainleveTable::build(s_min, s_max, tol).map_err(CliError::from)?;
    if let Err(e) = write_atomic(path, &encode(&table)) {
        writeln!(warn, "warning: could not write cache {}: {e}", path.display())?;
    }
    let status = match reason {
        Some(r) => CacheStatus::Rebuilt(r),
        None => CacheStatus::Built,
    };
    Ok((table, status))
}

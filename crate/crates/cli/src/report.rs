//! Report envelope and output routing.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "LTOP_OUT_DIR";

#[derive(Debug, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_hash: String,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub provenance: Provenance,
}

/// SHA-256 over the canonical JSON of everything that determines the output.
/// `serde_json` keeps object keys sorted, so the encoding is canonical.
pub fn config_hash(command: &str, inputs: &Value, seed: u64) -> String {
    let canon = json!({ "command": command, "inputs": inputs, "seed": seed }).to_string();
    let digest = Sha256::digest(canon.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value, seed: u64) -> Self {
        let config_hash = config_hash(command, &inputs, seed);
        Report {
            command: command.to_string(),
            inputs,
            results,
            provenance: Provenance { tool: "ltop", version: env!("CARGO_PKG_VERSION"), config_hash, seed },
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s.into_bytes()
    }
}

/// Where the report goes: `--out`, else `$LTOP_OUT_DIR/<command>.json`,
/// else standard output (`None`).
pub fn resolve_out(out: Option<&Path>, command: &str) -> Option<PathBuf> {
    if let Some(p) = out {
        return Some(p.to_path_buf());
    }
    std::env::var_os(OUT_DIR_ENV).filter(|d| !d.is_empty()).map(|d| PathBuf::from(d).join(format!("{command}.json")))
}

/// Write through a temporary file in the target directory and rename, so a
/// reader never sees a half-written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn emit(target: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match target {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

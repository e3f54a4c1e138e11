//! Output plumbing: deterministic JSON/CSV rendering and atomic file
//! writes (temp file + rename), so identical configs produce byte-identical
//! artifacts and interrupted runs never leave half-written files.

use std::io::Write;
use std::path::Path;

use crate::config::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Writes to `path` atomically, or to stdout when `path` is `None`.
pub fn emit(path: Option<&str>, content: &str) -> CliResult<()> {
    match path {
        None => {
            print!("{content}");
            std::io::stdout()
                .flush()
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(())
        }
        Some(path) => {
            let target = Path::new(path);
            let tmp = target.with_extension("tmp");
            std::fs::write(&tmp, content)
                .map_err(|e| CliError::Io(format!("{}: {e}", tmp.display())))?;
            std::fs::rename(&tmp, target)
                .map_err(|e| CliError::Io(format!("{}: {e}", target.display())))?;
            Ok(())
        }
    }
}

pub fn to_json_string(value: &serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

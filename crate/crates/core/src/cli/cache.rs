//! Persisted run records.
//!
//! One JSON file per record in the workspace directory, named by the
//! SHA-256 of the canonical request (command, parameters, truncations,
//! precision, tool version). Files are written to a temporary name and
//! renamed into place, and an existing record is never replaced.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::table::Table;
use crate::specfun::PrecisionContext;

/// Environment variable overriding the workspace directory.
pub const WORKSPACE_ENV: &str = "RITZLAB_WORKSPACE";
const DEFAULT_WORKSPACE: &str = ".ritzlab";

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Model parameters as they appear in a record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub k: u32,
    pub sigma: i32,
    pub epsilon: String,
}

/// What was asked for; the cache key is derived from this alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub command: String,
    pub params: Option<ParamsRecord>,
    pub dims: Vec<usize>,
    pub precision: PrecisionContext,
    /// Further options that change the output, in a fixed order.
    pub options: Vec<(String, String)>,
    pub tool_version: String,
}

impl Request {
    pub fn key(&self) -> String {
        let canonical = serde_json::to_string(self).expect("request encodes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub params: Option<ParamsRecord>,
    pub dims: Vec<usize>,
    pub precision: PrecisionContext,
    pub options: Vec<(String, String)>,
    pub outputs: Table,
    pub created_at: String,
    pub tool_version: String,
}

impl RunRecord {
    pub fn new(request: &Request, outputs: Table) -> Self {
        Self {
            command: request.command.clone(),
            params: request.params.clone(),
            dims: request.dims.clone(),
            precision: request.precision,
            options: request.options.clone(),
            outputs,
            created_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            tool_version: request.tool_version.clone(),
        }
    }

    fn matches(&self, request: &Request) -> bool {
        self.command == request.command
            && self.params == request.params
            && self.dims == request.dims
            && self.precision == request.precision
            && self.options == request.options
            && self.tool_version == request.tool_version
    }
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// The directory named by [`WORKSPACE_ENV`], else `.ritzlab`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(WORKSPACE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_WORKSPACE));
        Self::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, request: &Request) -> PathBuf {
        self.dir.join(format!("{}.json", request.key()))
    }

    /// The stored record for `request`, if one exists and agrees with it.
    /// Unreadable or foreign files count as misses.
    pub fn lookup(&self, request: &Request) -> Option<RunRecord> {
        let text = fs::read_to_string(self.path_for(request)).ok()?;
        let record: RunRecord = serde_json::from_str(&text).ok()?;
        record.matches(request).then_some(record)
    }

    /// Writes `record` unless a record for the same request already exists.
    pub fn store(&self, request: &Request, record: &RunRecord) -> io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(request);
        let mut body = serde_json::to_string_pretty(record).map_err(io::Error::other)?;
        body.push('\n');
        write_atomic(&path, body.as_bytes(), false)?;
        Ok(path)
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
/// With `replace` false an existing file is left untouched.
pub fn write_atomic(path: &Path, bytes: &[u8], replace: bool) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    if replace {
        tmp.persist(path).map_err(|e| e.error)?;
    } else {
        match tmp.persist_noclobber(path) {
            Ok(_) => {}
            Err(e) if e.error.kind() == io::ErrorKind::AlreadyExists => {}
            Err(e) => return Err(e.error),
        }
    }
    Ok(())
}

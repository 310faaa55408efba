use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// A failed command and the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ellipse_law::Error> for Failure {
    fn from(e: ellipse_law::Error) -> Self {
        use ellipse_law::Error::*;
        let code = match e {
            NonFinite(_) | Domain(_) | AxisOrder { .. } => 2,
            BranchCut { .. } | Collision { .. } | ToleranceNotReached { .. } => 1,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::numerical(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::numerical(format!("json error: {e}"))
    }
}

pub type CmdResult = Result<(), Failure>;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub version: String,
    pub duration_seconds: f64,
}

/// Collects what a command needs to describe its run.
pub struct ManifestBuilder {
    command: &'static str,
    parameters: Value,
    seed: Option<u64>,
    started: Instant,
}

impl ManifestBuilder {
    pub fn new(command: &'static str, parameters: impl Serialize, seed: Option<u64>) -> Self {
        Self {
            command,
            parameters: serde_json::to_value(parameters).unwrap_or(Value::Null),
            seed,
            started: Instant::now(),
        }
    }

    pub fn finish(&self) -> RunManifest {
        RunManifest {
            command: self.command.to_string(),
            parameters: self.parameters.clone(),
            seed: self.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            duration_seconds: self.started.elapsed().as_secs_f64(),
        }
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    path.with_file_name(name)
}

/// Writes `contents` to `path` and the manifest next to it.
pub fn write_with_manifest(path: &Path, contents: &str, manifest: &ManifestBuilder) -> CmdResult {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents)?;
    fs::write(sidecar_path(path), to_json(&manifest.finish())?)?;
    Ok(())
}

pub fn to_json(value: &impl Serialize) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Seventeen significant digits: enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

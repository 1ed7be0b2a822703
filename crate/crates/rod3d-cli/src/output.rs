//! Output plumbing: fixed float formatting, the stdout/file switch, and
//! the run manifest.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::{AppError, AppResult};

/// Format with 17 significant digits, the round-trip precision of f64;
/// identical invocations must produce byte-identical rows.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{x:.16e}")
    }
}

/// Where a dataset goes: `-` means standard output (and suppresses the
/// sidecar files, which have nowhere to live).
pub enum OutTarget {
    Stdout,
    File(PathBuf),
}

impl OutTarget {
    pub fn parse(arg: &str) -> Self {
        if arg == "-" {
            OutTarget::Stdout
        } else {
            OutTarget::File(PathBuf::from(arg))
        }
    }

    pub fn writer(&self) -> AppResult<Box<dyn Write>> {
        match self {
            OutTarget::Stdout => Ok(Box::new(BufWriter::new(std::io::stdout()))),
            OutTarget::File(path) => {
                let f = File::create(path)
                    .map_err(|e| AppError::io(format!("cannot create {}: {e}", path.display())))?;
                Ok(Box::new(BufWriter::new(f)))
            }
        }
    }

    pub fn path(&self) -> Option<&Path> {
        match self {
            OutTarget::Stdout => None,
            OutTarget::File(p) => Some(p),
        }
    }

    /// A sibling file sharing the stem, e.g. `run.csv` -> `run.events.json`.
    pub fn sibling(&self, suffix: &str) -> Option<PathBuf> {
        self.path().map(|p| {
            let stem = p
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .to_string();
            p.with_file_name(format!("{stem}.{suffix}"))
        })
    }
}

#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub tool_version: String,
    pub outputs: Vec<String>,
    pub wall_time_s: f64,
}

/// Tracks a run and writes its manifest next to the first file output.
pub struct RunScope {
    command: String,
    parameters: serde_json::Value,
    outputs: Vec<PathBuf>,
    started: Instant,
}

impl RunScope {
    pub fn new(command: &str, parameters: serde_json::Value) -> Self {
        RunScope {
            command: command.to_string(),
            parameters,
            outputs: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn record(&mut self, path: &Path) {
        self.outputs.push(path.to_path_buf());
    }

    /// Write `<first output stem>.manifest.json`; a no-op for pure-stdout
    /// runs.
    pub fn finish(self) -> AppResult<()> {
        let Some(first) = self.outputs.first() else {
            return Ok(());
        };
        let stem = first
            .file_stem()
            .unwrap_or_default()
            .to_string_lossy()
            .to_string();
        let path = first.with_file_name(format!("{stem}.manifest.json"));
        let manifest = RunManifest {
            command: self.command,
            parameters: self.parameters,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: self
                .outputs
                .iter()
                .map(|p| p.display().to_string())
                .collect(),
            wall_time_s: self.started.elapsed().as_secs_f64(),
        };
        write_json(&path, &manifest)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> AppResult<()> {
    let f = File::create(path)
        .map_err(|e| AppError::io(format!("cannot create {}: {e}", path.display())))?;
    let mut w = BufWriter::new(f);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| AppError::io(e.to_string()))?;
    w.write_all(b"\n")
        .map_err(|e| AppError::io(e.to_string()))?;
    Ok(())
}

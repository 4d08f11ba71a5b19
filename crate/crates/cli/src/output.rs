use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use plancherel::io::{write_sidecar, ArtifactHeader, RunRecord};
use serde::Serialize;

use crate::args::Format;

pub const OUT_DIR_ENV: &str = "PLANCHEREL_OUT_DIR";

/// Where a command's primary artifact goes.
#[derive(Clone, Debug)]
pub enum Target {
    Stdout,
    File(PathBuf),
}

impl Target {
    /// `--out` wins, then `$PLANCHEREL_OUT_DIR/<default_name>`, then stdout.
    pub fn resolve(out: Option<&Path>, default_name: &str) -> Target {
        if let Some(p) = out {
            return Target::File(p.to_path_buf());
        }
        match std::env::var_os(OUT_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Target::File(PathBuf::from(dir).join(default_name)),
            _ => Target::Stdout,
        }
    }

    pub fn path(&self) -> Option<&Path> {
        match self {
            Target::File(p) => Some(p),
            Target::Stdout => None,
        }
    }

    /// A file beside the artifact, `<name>.<suffix>`.
    pub fn sibling(&self, suffix: &str) -> Option<PathBuf> {
        self.path().map(|p| {
            let mut name = p.file_name().map(|n| n.to_os_string()).unwrap_or_default();
            name.push(".");
            name.push(suffix);
            p.with_file_name(name)
        })
    }

    pub fn open(&self) -> Result<Box<dyn Write>> {
        Ok(match self {
            Target::Stdout => Box::new(BufWriter::new(io::stdout().lock())),
            Target::File(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                }
                Box::new(BufWriter::new(
                    File::create(p).with_context(|| format!("creating {}", p.display()))?,
                ))
            }
        })
    }
}

pub fn extension(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
        Format::Jsonl => "jsonl",
    }
}

/// Flattens a serializable argument struct into `key=value` strings.
pub fn config_echo<T: Serialize>(args: &T) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    if let Ok(serde_json::Value::Object(map)) = serde_json::to_value(args) {
        for (k, v) in map {
            let s = match v {
                serde_json::Value::Null => continue,
                serde_json::Value::String(s) => s,
                other => other.to_string(),
            };
            out.insert(k, s);
        }
    }
    out
}

/// Serialized document for JSON outputs: header plus payload.
#[derive(Serialize)]
pub struct Document<'a, T: Serialize> {
    pub header: &'a ArtifactHeader,
    #[serde(flatten)]
    pub body: T,
}

pub fn write_json<T: Serialize>(mut out: impl Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

/// Times a run and records the wall clock beside every file it produced.
pub struct Clock {
    started: SystemTime,
    timer: Instant,
    threads: usize,
}

impl Clock {
    pub fn start() -> Self {
        Clock {
            started: SystemTime::now(),
            timer: Instant::now(),
            threads: rayon::current_num_threads(),
        }
    }

    pub fn finish(&self, artifacts: &[PathBuf]) -> Result<()> {
        let started_unix_ms = self.started.duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0);
        let elapsed_seconds = self.timer.elapsed().as_secs_f64();
        for a in artifacts {
            let record = RunRecord {
                artifact: a.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default(),
                version: plancherel::VERSION.into(),
                started_unix_ms,
                elapsed_seconds,
                threads: self.threads,
            };
            write_sidecar(a, &record)?;
        }
        if artifacts.is_empty() {
            eprintln!(
                "started_unix_ms={started_unix_ms} elapsed_seconds={elapsed_seconds:.3} threads={}",
                self.threads
            );
        }
        Ok(())
    }
}

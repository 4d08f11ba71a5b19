mod args;
mod commands;
mod output;

use std::ffi::OsString;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, COMMANDS};

const EXIT_RUNTIME: u8 = 1;
const EXIT_SUITE_FAILED: u8 = 3;
const EXIT_USAGE: u8 = 64;

pub enum Outcome {
    Done,
    SuiteFailed,
}

/// An invalid invocation, as opposed to a failure while running.
#[derive(Debug)]
pub struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn diagnostic(kind: &str, message: &str) {
    let v = serde_json::json!({ "error": kind, "message": message.trim_end() });
    eprintln!("{v}");
}

/// Reads `key = value` lines; `#` starts a comment.
fn read_config(path: &Path) -> Result<Vec<(String, String)>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config {} line {}: expected key = value", path.display(), n + 1))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(format!("config {} line {}: bad key {:?}", path.display(), n + 1, k.trim()));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

fn config_path(argv: &[String]) -> Option<String> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Splices config entries in after the subcommand, skipping keys already
/// given on the command line.
fn merge_config(argv: Vec<String>) -> Result<Vec<String>, String> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let entries = read_config(Path::new(&path))?;
    let given = |key: &str| {
        let flag = format!("--{key}");
        argv.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
    };
    let mut extra = Vec::new();
    for (k, v) in entries {
        if given(&k) {
            continue;
        }
        match v.as_str() {
            "true" => extra.push(format!("--{k}")),
            "false" => {}
            _ => extra.push(format!("--{k}={v}")),
        }
    }
    let pos = argv
        .iter()
        .position(|a| COMMANDS.contains(&a.as_str()))
        .map_or(argv.len(), |p| p + 1);
    let mut merged = argv;
    merged.splice(pos..pos, extra);
    Ok(merged)
}

fn main() -> ExitCode {
    let argv: Vec<String> = match std::env::args_os().map(OsString::into_string).collect() {
        Ok(v) => v,
        Err(_) => {
            diagnostic("usage", "arguments must be valid UTF-8");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let argv = match merge_config(argv) {
        Ok(v) => v,
        Err(e) => {
            diagnostic("usage", &e);
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            diagnostic("usage", &e.render().to_string());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Some(n) = cli.global.threads {
        if n == 0 {
            diagnostic("usage", "--threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            diagnostic("runtime", &e.to_string());
            return ExitCode::from(EXIT_RUNTIME);
        }
    }
    match commands::run(&cli.global, &cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::SuiteFailed) => ExitCode::from(EXIT_SUITE_FAILED),
        Err(e) => match e.downcast_ref::<Usage>() {
            Some(u) => {
                diagnostic("usage", &u.0);
                ExitCode::from(EXIT_USAGE)
            }
            None => {
                diagnostic("runtime", &format!("{e:#}"));
                ExitCode::from(EXIT_RUNTIME)
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn config_fills_missing_flags_only() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.conf");
        fs::write(&p, "# run\ntheta = 4\nn=10\nseed = 3 # trailing\n").unwrap();
        let argv = v(&["plancherel", "--config", p.to_str().unwrap(), "sample", "--n", "5"]);
        let merged = merge_config(argv).unwrap();
        assert_eq!(
            merged[3..],
            v(&["sample", "--theta=4", "--seed=3", "--n", "5"])[..]
        );
    }

    #[test]
    fn malformed_config_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.conf");
        fs::write(&p, "theta 4\n").unwrap();
        assert!(merge_config(v(&["plancherel", "sample", "--config", p.to_str().unwrap()])).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}

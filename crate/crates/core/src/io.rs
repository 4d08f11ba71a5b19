//! Artifact headers and run metadata.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::{Result, VERSION};

/// Metadata embedded at the top of every artifact.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArtifactHeader {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: Option<u64>,
    pub config: BTreeMap<String, String>,
}

impl ArtifactHeader {
    pub fn new(command: &str, seed: Option<u64>, config: BTreeMap<String, String>) -> Self {
        ArtifactHeader {
            tool: "plancherel".into(),
            version: VERSION.into(),
            command: command.into(),
            seed,
            config,
        }
    }

    /// `# key=value` lines for CSV outputs.
    pub fn write_comment<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# tool={} version={}", self.tool, self.version)?;
        writeln!(out, "# command={}", self.command)?;
        match self.seed {
            Some(s) => writeln!(out, "# seed={s}")?,
            None => writeln!(out, "# seed=none")?,
        }
        for (k, v) in &self.config {
            writeln!(out, "# {k}={v}")?;
        }
        Ok(())
    }
}

/// Wall-clock data kept beside an artifact so the artifact itself stays
/// byte-identical across reruns.
#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub artifact: String,
    pub version: String,
    pub started_unix_ms: u128,
    pub elapsed_seconds: f64,
    pub threads: usize,
}

pub fn sidecar_path(artifact: &Path) -> PathBuf {
    let mut name = artifact.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".run.json");
    artifact.with_file_name(name)
}

pub fn write_sidecar(artifact: &Path, record: &RunRecord) -> Result<()> {
    fs::write(sidecar_path(artifact), serde_json::to_vec_pretty(record)?)?;
    Ok(())
}

/// Minimal CSV writer for `Serialize` rows, with the header as comments.
pub fn write_csv_rows<W: Write, T: Serialize>(mut out: W, header: &ArtifactHeader, rows: &[T]) -> Result<()> {
    header.write_comment(&mut out)?;
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(std::io::Error::other)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_path(Path::new("out/a.csv")), PathBuf::from("out/a.csv.run.json"));
    }

    #[test]
    fn csv_with_header() {
        #[derive(Serialize)]
        struct Row {
            x: String,
            v: f64,
        }
        let mut cfg = BTreeMap::new();
        cfg.insert("theta".into(), "1".into());
        let h = ArtifactHeader::new("kernel", Some(7), cfg);
        let mut buf = Vec::new();
        write_csv_rows(&mut buf, &h, &[Row { x: "1/2".into(), v: 0.25 }]).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.contains("# seed=7\n# theta=1\nx,v\n1/2,0.25\n"), "{s}");
    }
}

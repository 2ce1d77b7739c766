//! Artifact directory: CSV and JSON outputs plus a manifest.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use mpnarrative::frame::fmt_num;

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(hex(&Sha256::digest(&bytes)))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub struct Artifacts {
    dir: PathBuf,
    outputs: Vec<(String, String)>,
    inputs: Vec<(String, String)>,
}

impl Artifacts {
    pub fn create(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Self { dir: dir.to_path_buf(), outputs: Vec::new(), inputs: Vec::new() })
    }

    /// Records an input file by the path as given and its digest.
    pub fn input(&mut self, path: &Path) -> Result<()> {
        let digest = sha256_file(path)?;
        self.inputs.push((path.display().to_string(), digest));
        Ok(())
    }

    fn record(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
        self.outputs.push((name.to_string(), hex(&Sha256::digest(bytes))));
        Ok(())
    }

    pub fn csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().context("flushing csv")?;
        self.record(name, &bytes)
    }

    pub fn frame(&mut self, name: &str, frame: &mpnarrative::TimeSeriesFrame) -> Result<()> {
        let mut buf = Vec::new();
        frame.write_csv(&mut buf)?;
        self.record(name, &buf)
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        self.record(name, s.as_bytes())
    }

    /// Writes `manifest.json`: everything needed to reproduce the run. The
    /// output directory itself is left out so reruns elsewhere match.
    pub fn finish(mut self, command: &str, seed: u64, config: &impl Serialize) -> Result<()> {
        let entries = |v: &[(String, String)], key: &str| -> Vec<Value> {
            v.iter().map(|(p, d)| json!({ key: p, "sha256": d })).collect()
        };
        let manifest = json!({
            "tool": "mpnarrative",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "seed": seed,
            "config": config,
            "inputs": entries(&self.inputs, "path"),
            "outputs": entries(&self.outputs, "file"),
        });
        let mut s = serde_json::to_string_pretty(&manifest)?;
        s.push('\n');
        let path = self.dir.join("manifest.json");
        fs::write(&path, s).with_context(|| format!("writing {}", path.display()))?;
        self.outputs.clear();
        Ok(())
    }
}

pub fn num(v: f64) -> String {
    fmt_num(v)
}

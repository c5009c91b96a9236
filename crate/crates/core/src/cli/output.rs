use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

/// A real with 17 significant digits, enough to round-trip any `f64`.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// A file produced by a command, held in memory until written.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
    /// Data rows: lines after the header for CSV, one for JSON.
    pub rows: usize,
}

impl Artifact {
    pub fn csv(name: &str, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Self {
        let mut contents = header.join(",");
        contents.push('\n');
        let mut n = 0;
        for row in rows {
            let line: Vec<String> = row.into_iter().map(format_real).collect();
            writeln!(contents, "{}", line.join(",")).expect("writing to a String");
            n += 1;
        }
        Self {
            name: name.to_string(),
            contents,
            rows: n,
        }
    }

    pub fn json(name: &str, value: &serde_json::Value) -> Self {
        let mut contents = serde_json::to_string_pretty(value).expect("JSON values always serialize");
        contents.push('\n');
        Self {
            name: name.to_string(),
            contents,
            rows: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputFile {
    pub path: String,
    pub rows: usize,
}

/// Record of one command invocation, written next to its outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// SHA-256 of the resolved configuration serialized as JSON.
    pub config_digest: String,
    pub version: String,
    pub outputs: Vec<OutputFile>,
    pub duration_seconds: f64,
}

impl RunManifest {
    pub const FILE_NAME: &'static str = "manifest.json";
}

pub fn digest<T: Serialize>(resolved: &T) -> String {
    let bytes = serde_json::to_vec(resolved).expect("configuration serializes");
    Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
        write!(s, "{b:02x}").expect("writing to a String");
        s
    })
}

pub fn write_all(dir: &Path, artifacts: &[Artifact]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for a in artifacts {
        std::fs::write(dir.join(&a.name), &a.contents)?;
    }
    Ok(())
}
